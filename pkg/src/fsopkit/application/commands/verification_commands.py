"""
Commands für fsopkit
Ein Command pro CLI-Verb; Dateipfade werden erst im Handler gelesen
"""
from dataclasses import dataclass
from typing import Optional, Tuple


# =====================================================
# Posets & Darstellungen
# =====================================================

@dataclass
class PosetFamilyCommand:
    """Command: Gitterfamilie auswählen"""
    family: str  # partition/boolean/subspace
    n: int
    q: Optional[int] = None


@dataclass
class WhitneyCommand(PosetFamilyCommand):
    """Command: Whitney-Polynom gegen Produktform"""


@dataclass
class MobiusCommand(PosetFamilyCommand):
    """Command: homologische gegen rekursive Möbius-Funktion"""


@dataclass
class UpperCmCommand(PosetFamilyCommand):
    """Command: upper-CM Eigenschaft"""


@dataclass
class BarCommand(PosetFamilyCommand):
    """Command: Bar-Komplex von kP_{≥x}"""
    element: Optional[str] = None  # Label; None = alle x ≠ 1̂


@dataclass
class KoszulCommand:
    """Command: Koszul- gegen Bar-Homologie"""
    family: Optional[str] = None
    n: Optional[int] = None
    q: Optional[int] = None
    rep_path: Optional[str] = None
    samples: int = 5
    seed: int = 0


# =====================================================
# FS^op-Moduln
# =====================================================

@dataclass
class FsopEvalCommand:
    """Command: M_n auswerten und Grothendieck-Identität für B_d prüfen"""
    module_path: str
    n: int
    d: int = 2


@dataclass
class HilbertCommand:
    """Command: Hilbert-Reihe und rationales Fenster"""
    module_path: str
    max_n: int


@dataclass
class KdCommand:
    """Command: Exaktheit von K_d bzw. B_d"""
    module_path: str
    d: int
    n: int
    bar: bool = False


@dataclass
class TypeCommand:
    """Command: Typ < J im Fenster"""
    module_path: str
    j: Tuple[int, ...]
    max_n: int
    slack: Optional[int] = None


@dataclass
class CharCommand:
    """Command: Charakter von B_d gegen binomiale D-Operatoren"""
    module_path: str
    d: int
    max_n: int


# =====================================================
# Symmetrische Funktionen
# =====================================================

@dataclass
class SymPairCommand:
    """Command: Hall-Paarung zweier Basiselemente"""
    left: str  # z.B. "s:2,1" oder "y:3"
    right: str
    truncation: Optional[int] = None


@dataclass
class SchurCommand:
    """Command: Schur-Entwicklung"""
    element: str
    max_deg: int
    truncation: Optional[int] = None
    symfunc_path: Optional[str] = None


@dataclass
class ApplyDCommand:
    """Command: D_n anwenden oder den Kern D_n(y_m) = δ prüfen"""
    index: int
    element: Optional[str] = None
    kernel_max: Optional[int] = None
    truncation: Optional[int] = None


# =====================================================
# Charakterraum
# =====================================================

@dataclass
class PiKCommand:
    """Command: π_k(f) mit Projektionseigenschaften"""
    element: str
    k: int
    profile: str = "0"
    truncation: Optional[int] = None
    check_profile: bool = False
    r: Optional[int] = None


@dataclass
class MembershipCommand:
    """Command: f ∈ ⊕_A V_{A,t(A,J)} über Typ-Gleichungen und Lösungsraum"""
    j: Tuple[int, ...]
    element: Optional[str] = None
    profile: str = "0"
    module_path: Optional[str] = None
    symfunc_path: Optional[str] = None
    truncation: Optional[int] = None
    slack: Optional[int] = None


@dataclass
class LNuCommand:
    """Command: L_ν und Dualität zu E_λ"""
    nu: str
    profile: str
    r: int
    k: int
    truncation: Optional[int] = None


@dataclass
class ClassFnCommand:
    """Command: Klassenfunktion (X über ν) A^{X-ν}"""
    nu: str
    profile: str
    max_n: Optional[int] = None


@dataclass
class MultFitCommand:
    """Command: Multiplizitätsreihe ⟨s_{(n,λ)}, ch M⟩ rational fitten"""
    module_path: str
    shape: str = ""
    truncation: Optional[int] = None
    denom_degree: int = 2
    root_orders: int = 2


# =====================================================
# Sprachen
# =====================================================

@dataclass
class DfaCommand:
    """Command: Automat aus Regex oder JSON und dessen Struktur"""
    regex: Optional[str] = None
    dfa_path: Optional[str] = None
    alphabet: str = "ab"
    truncate_at: Optional[int] = None


@dataclass
class LanguageIdealCommand:
    """Command: I(w, L)"""
    word: str
    regex: Optional[str] = None
    dfa_path: Optional[str] = None
    alphabet: str = "ab"


@dataclass
class LanguagesVerifyCommand:
    """Command: Exaktheit von B(kJ(w, L))"""
    words: Tuple[str, ...]
    regex: Optional[str] = None
    dfa_path: Optional[str] = None
    alphabet: str = "ab"


@dataclass
class InitIdealCommand:
    """Command: Initialideal und assoziiert Graduiertes"""
    module_path: str
    max_n: int
    order_max_d: int = 3
    order_max_n: int = 5
