"""
Domain Exceptions für fsopkit
Alle fachlichen Fehler leiten von FsopKitError ab
"""
from typing import Optional, Tuple


class FsopKitError(Exception):
    """Basis-Fehler für alle fsopkit-Fehler"""


# =====================================================
# Eingaben & Grenzen
# =====================================================

class BoundExceededError(FsopKitError):
    """Eine konfigurierte Aufzählungs- oder Auswertungsgrenze wurde überschritten"""

    def __init__(self, name: str, value: int, bound: int):
        self.name = name
        self.value = value
        self.bound = bound
        super().__init__(f"{name}={value} überschreitet die Grenze {bound}")


class InvalidInputError(FsopKitError):
    """Ungültige fachliche Eingabe"""


class ShapeMismatchError(InvalidInputError):
    """Matrix-Dimensionen passen nicht zusammen"""


class ConfigurationError(FsopKitError):
    """Konfiguration nicht lesbar oder ungültig"""


# =====================================================
# Kettenkomplexe & Posets
# =====================================================

class ChainComplexError(FsopKitError):
    """Randoperator erfüllt d∘d = 0 nicht"""

    def __init__(self, degree: int, nonzero_entries: int):
        self.degree = degree
        self.nonzero_entries = nonzero_entries
        super().__init__(
            f"d∘d ≠ 0 in Grad {degree} ({nonzero_entries} Einträge ungleich 0)"
        )


class PosetStructureError(FsopKitError):
    """Strukturelle Voraussetzung an ein Poset verletzt"""


class NoTopElementError(PosetStructureError):
    """Poset hat kein grösstes Element"""


class NotGradedError(PosetStructureError):
    """Poset ist nicht graduiert"""


class NotUpperCMError(PosetStructureError):
    """Poset ist nicht upper Cohen-Macaulay"""


class IncomparableElementError(PosetStructureError):
    """Element ist mit dem Top-Element nicht vergleichbar"""


class FunctorialityError(FsopKitError):
    """Darstellung ist nicht funktoriell"""

    def __init__(self, triple: Tuple[int, int, int], detail: Optional[str] = None):
        self.triple = triple
        message = f"Funktorialität verletzt für {triple}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class NonInjectiveTransitionError(FsopKitError):
    """Übergangsabbildung einer P-Menge ist nicht injektiv"""


class RelationStabilityError(FsopKitError):
    """Relationenraum R_n ist nicht stabil unter Präkomposition"""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"R_{degree} ist nicht stabil unter den gezogenen Surjektionen")


# =====================================================
# Symmetrische Funktionen & Sprachen
# =====================================================

class TruncationMismatchError(FsopKitError):
    """Operanden haben unterschiedliche Abschneidegrade"""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"Abschneidegrade {left} und {right} passen nicht zusammen")


class RegexSyntaxError(FsopKitError):
    """Syntaxfehler im regulären Ausdruck"""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (Position {position})")
