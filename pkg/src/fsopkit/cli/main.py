"""
fsopkit CLI - Command Line Interface
Haupteinstiegspunkt: ein Unterbefehl pro Verifikation, Reports auf stdout
"""
import sys
from typing import Callable, List, Optional, Sequence, Tuple, Union

import click
from rich.console import Console
from rich.markup import escape

from fsopkit import __version__
from fsopkit.application.commands.verification_commands import (
    ApplyDCommand,
    BarCommand,
    CharCommand,
    ClassFnCommand,
    DfaCommand,
    FsopEvalCommand,
    HilbertCommand,
    InitIdealCommand,
    KdCommand,
    KoszulCommand,
    LanguageIdealCommand,
    LanguagesVerifyCommand,
    LNuCommand,
    MembershipCommand,
    MobiusCommand,
    MultFitCommand,
    PiKCommand,
    SchurCommand,
    SymPairCommand,
    TypeCommand,
    UpperCmCommand,
    WhitneyCommand,
)
from fsopkit.application.handlers.verification_handlers import (
    FAMILIES,
    VerificationCommandHandler,
    exit_code_for,
)
from fsopkit.domain.exceptions import FsopKitError
from fsopkit.domain.models.report import VerificationReport
from fsopkit.infrastructure.config.settings import (
    OutputFormat,
    RunConfig,
    get_settings,
    load_run_config,
)
from fsopkit.infrastructure.logging.setup import configure_logging, get_logger, level_for_verbosity
from fsopkit.infrastructure.reports.report_emitter import emit_all

error_console = Console(stderr=True, highlight=False)
logger = get_logger(__name__)

ReportResult = Union[VerificationReport, List[VerificationReport]]


def _int_tuple(ctx, param, value: Optional[str]) -> Optional[Tuple[int, ...]]:
    """"2,3" -> (2, 3)"""
    if value is None:
        return None
    try:
        parts = tuple(int(part) for part in value.replace(" ", "").split(",") if part)
    except ValueError:
        raise click.BadParameter(f"Komma-getrennte Zahlen erwartet, erhalten '{value}'")
    if not parts:
        raise click.BadParameter("Mindestens eine Zahl angeben")
    return parts


def _fail(message: str) -> None:
    error_console.print(f"[bold red]Fehler:[/bold red] {escape(message)}")


def _run(ctx: click.Context, action: Callable[[VerificationCommandHandler], ReportResult]) -> None:
    """Führt eine Verifikation aus, gibt die Reports aus und setzt den Exit-Code"""
    config: RunConfig = ctx.obj["config"]
    handler: VerificationCommandHandler = ctx.obj["handler"]
    try:
        result = action(handler)
        reports = result if isinstance(result, list) else [result]
        click.echo(emit_all(reports, config, get_settings()), nl=False)
    except FsopKitError as exc:
        logger.debug("command_failed", error=type(exc).__name__)
        _fail(str(exc))
        ctx.exit(1)
    ctx.exit(exit_code_for(reports))


family_option = click.option(
    "--family", type=click.Choice(FAMILIES), required=True, help="Gitterfamilie"
)
n_option = click.option("--n", "n", type=int, required=True, help="Rang n")
q_option = click.option("--q", "q", type=int, default=None, help="Körpergrösse (nur subspace)")
module_option = click.option(
    "--module", "module_path", type=click.Path(dir_okay=False), required=True,
    help="FS^op-Präsentation (JSON)",
)


@click.group()
@click.version_option(version=__version__, prog_name="fsopkit")
@click.option("-v", "--verbose", count=True, help="Mehr Logausgabe (-v INFO, -vv DEBUG)")
@click.option("--log-json", is_flag=True, help="Logs als JSON auf stderr")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="RunConfig (JSON/YAML)")
@click.option("--max-degree", type=int, default=None, help="Abschneidegrad N")
@click.option("--slack", type=int, default=None, help="Zusatzfenster beschränkter Quantoren")
@click.option(
    "--format", "output_format", type=click.Choice([f.value for f in OutputFormat]), default=None,
    help="Ausgabeformat",
)
@click.pass_context
def cli(ctx, verbose, log_json, config_path, max_degree, slack, output_format):
    """
    fsopkit - Verifikation von FS^op-Moduln, Posets und Charakterräumen

    Verwende 'fsopkit COMMAND --help' für mehr Informationen.
    """
    configure_logging(level_for_verbosity(verbose), json_logs=log_json)
    try:
        config = load_run_config(config_path) if config_path else RunConfig()
        config = config.with_overrides(max_degree, slack, output_format)
    except FsopKitError as exc:
        _fail(str(exc))
        ctx.exit(1)
    ctx.obj = {"config": config, "handler": VerificationCommandHandler(config)}


# =====================================================
# poset
# =====================================================

@cli.group()
def poset():
    """Whitney-Polynome, Möbius-Funktionen, upper-CM"""


@poset.command()
@family_option
@n_option
@q_option
@click.pass_context
def whitney(ctx, family, n, q):
    """Whitney-Polynom gegen Produktform"""
    _run(ctx, lambda h: h.handle_whitney(WhitneyCommand(family, n, q)))


@poset.command()
@family_option
@n_option
@q_option
@click.pass_context
def mobius(ctx, family, n, q):
    """Homologische gegen rekursive Möbius-Funktion"""
    _run(ctx, lambda h: h.handle_mobius(MobiusCommand(family, n, q)))


@poset.command()
@family_option
@n_option
@q_option
@click.pass_context
def uppercm(ctx, family, n, q):
    """Cohen-Macaulay-Eigenschaft von oben"""
    _run(ctx, lambda h: h.handle_upper_cm(UpperCmCommand(family, n, q)))


# =====================================================
# rep
# =====================================================

@cli.group()
def rep():
    """Bar- und Koszul-Komplexe von Poset-Darstellungen"""


@rep.command()
@family_option
@n_option
@q_option
@click.option("--element", default=None, help="Label von x (Standard: alle x ≠ 1̂)")
@click.pass_context
def bar(ctx, family, n, q, element):
    """Exaktheit von B_P(kP_{≥x})"""
    _run(ctx, lambda h: h.handle_bar(BarCommand(family, n, q, element)))


@rep.command()
@click.option("--family", type=click.Choice(FAMILIES), default=None)
@click.option("--n", "n", type=int, default=None)
@click.option("--q", "q", type=int, default=None)
@click.option("--rep", "rep_path", type=click.Path(dir_okay=False), default=None, help="Darstellung (JSON)")
@click.option("--samples", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def koszul(ctx, family, n, q, rep_path, samples, seed):
    """Koszul- gegen Bar-Homologie"""
    command = KoszulCommand(family, n, q, rep_path, samples, seed)
    _run(ctx, lambda h: h.handle_koszul(command))


# =====================================================
# fsop
# =====================================================

@cli.group()
def fsop():
    """FS^op-Moduln: Auswertung, Hilbert-Reihe, K_d, Typ, Charaktere"""


@fsop.command(name="eval")
@module_option
@click.option("--n", "n", type=int, required=True)
@click.option("--d", "d", type=int, default=2, show_default=True)
@click.pass_context
def eval_(ctx, module_path, n, d):
    """M_n auswerten und Euler-Charakteristik von B_d prüfen"""
    _run(ctx, lambda h: h.handle_fsop_eval(FsopEvalCommand(module_path, n, d)))


@fsop.command()
@module_option
@click.option("--max", "max_n", type=int, required=True)
@click.pass_context
def hilbert(ctx, module_path, max_n):
    """dim M_0 .. M_max und rationales Fenster"""
    _run(ctx, lambda h: h.handle_hilbert(HilbertCommand(module_path, max_n)))


@fsop.command()
@module_option
@click.option("--d", "d", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--bar", "use_bar", is_flag=True, help="B_d statt K_d")
@click.pass_context
def kd(ctx, module_path, d, n, use_bar):
    """Exaktheit von K_d(M)_n bzw. B_d(M)_n"""
    _run(ctx, lambda h: h.handle_kd(KdCommand(module_path, d, n, use_bar)))


@fsop.command(name="type")
@module_option
@click.option("--j", "j", required=True, callback=_int_tuple, help="J, z.B. 2,2")
@click.option("--max", "max_n", type=int, required=True)
@click.option("--slack", "local_slack", type=int, default=None)
@click.pass_context
def type_(ctx, module_path, j, max_n, local_slack):
    """Typ < J im Fenster"""
    _run(ctx, lambda h: h.handle_type(TypeCommand(module_path, j, max_n, local_slack)))


@fsop.command()
@module_option
@click.option("--d", "d", type=int, required=True)
@click.option("--max", "max_n", type=int, required=True)
@click.pass_context
def char(ctx, module_path, d, max_n):
    """Charakter von B_d(M) gegen (D über λ) ch(M)"""
    _run(ctx, lambda h: h.handle_char(CharCommand(module_path, d, max_n)))


# =====================================================
# sym
# =====================================================

@cli.group()
def sym():
    """Symmetrische Funktionen (Elemente als kind:index, z.B. s:2,1 oder y:3)"""


@sym.command()
@click.option("--left", required=True)
@click.option("--right", required=True)
@click.pass_context
def pair(ctx, left, right):
    """Hall-Paarung ⟨f, g⟩"""
    _run(ctx, lambda h: h.handle_sym_pair(SymPairCommand(left, right)))


@sym.command()
@click.option("--element", default="p:1")
@click.option("--file", "symfunc_path", type=click.Path(dir_okay=False), default=None)
@click.option("--max-deg", type=int, required=True)
@click.pass_context
def schur(ctx, element, symfunc_path, max_deg):
    """Schur-Koeffizienten bis max-deg"""
    command = SchurCommand(element, max_deg, symfunc_path=symfunc_path)
    _run(ctx, lambda h: h.handle_schur(command))


@sym.command(name="applyD")
@click.option("--index", type=int, default=1, show_default=True)
@click.option("--element", default=None)
@click.option("--kernel", "kernel_max", type=int, default=None, help="D_n(y_m) = δ für n, m ≤ kernel")
@click.pass_context
def apply_d(ctx, index, element, kernel_max):
    """D_n anwenden oder die Kern-Dualität prüfen"""
    _run(ctx, lambda h: h.handle_apply_d(ApplyDCommand(index, element, kernel_max)))


# =====================================================
# charspace
# =====================================================

@cli.group()
def charspace():
    """Charakterraum: π_k, Typ-Gleichungen, L_ν, Klassenfunktionen, Multiplizitäten"""


@charspace.command()
@click.option("--element", required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--profile", default="0", show_default=True, help="A, z.B. 1^2 oder 1,2")
@click.option("--r", "r", type=int, default=None, help="zusätzlich V_{A,r} prüfen")
@click.pass_context
def pik(ctx, element, k, profile, r):
    """π_k(f · exp(Σ a_i y_i))"""
    _run(ctx, lambda h: h.handle_pi_k(PiKCommand(element, k, profile, r=r)))


@charspace.command()
@click.option("--j", "j", required=True, callback=_int_tuple)
@click.option("--element", default=None)
@click.option("--profile", default="0", show_default=True)
@click.option("--module", "module_path", type=click.Path(dir_okay=False), default=None)
@click.option("--file", "symfunc_path", type=click.Path(dir_okay=False), default=None)
@click.option("--slack", "local_slack", type=int, default=None)
@click.pass_context
def membership(ctx, j, element, profile, module_path, symfunc_path, local_slack):
    """Typ-Gleichungen gegen Lösungsraum"""
    command = MembershipCommand(
        j, element, profile, module_path, symfunc_path, slack=local_slack
    )
    _run(ctx, lambda h: h.handle_membership(command))


@charspace.command()
@click.option("--nu", required=True)
@click.option("--profile", required=True)
@click.option("--r", "r", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.pass_context
def lnu(ctx, nu, profile, r, k):
    """L_ν und Dualität zu E_λ"""
    _run(ctx, lambda h: h.handle_l_nu(LNuCommand(nu, profile, r, k)))


@charspace.command()
@click.option("--nu", required=True)
@click.option("--profile", required=True)
@click.option("--max", "max_n", type=int, default=None)
@click.pass_context
def classfn(ctx, nu, profile, max_n):
    """(X über ν) A^{X-ν} als symmetrische Funktion"""
    _run(ctx, lambda h: h.handle_class_fn(ClassFnCommand(nu, profile, max_n)))


@charspace.command()
@module_option
@click.option("--shape", default="", help="λ (leer für ∅)")
@click.option("--denom-degree", type=int, default=2, show_default=True)
@click.option("--root-orders", type=int, default=2, show_default=True)
@click.pass_context
def multfit(ctx, module_path, shape, denom_degree, root_orders):
    """Multiplizitätsreihe rational fitten"""
    command = MultFitCommand(
        module_path, shape, denom_degree=denom_degree, root_orders=root_orders
    )
    _run(ctx, lambda h: h.handle_mult_fit(command))


# =====================================================
# lang
# =====================================================

regex_option = click.option("--regex", default=None, help="Regulärer Ausdruck (| * ( ))")
dfa_option = click.option("--dfa", "dfa_path", type=click.Path(dir_okay=False), default=None)
alphabet_option = click.option("--alphabet", default="ab", show_default=True)


@cli.group()
def lang():
    """Geordnete Sprachen, Ideale I(w, L) und Initialmoduln"""


@lang.command()
@regex_option
@dfa_option
@alphabet_option
@click.option("--truncate-at", type=int, default=None, help="Zustand α für A_{≥α}")
@click.pass_context
def dfa(ctx, regex, dfa_path, alphabet, truncate_at):
    """Minimaler DFA, Ordnung und Eigenschaft (*)"""
    _run(ctx, lambda h: h.handle_dfa(DfaCommand(regex, dfa_path, alphabet, truncate_at)))


@lang.command()
@click.option("--word", required=True)
@regex_option
@dfa_option
@alphabet_option
@click.pass_context
def ideal(ctx, word, regex, dfa_path, alphabet):
    """I(w, L) im Partitionsverband"""
    _run(ctx, lambda h: h.handle_language_ideal(LanguageIdealCommand(word, regex, dfa_path, alphabet)))


@lang.command()
@click.option("--word", "words", multiple=True, required=True, help="mehrfach angeben")
@regex_option
@dfa_option
@alphabet_option
@click.pass_context
def verify(ctx, words, regex, dfa_path, alphabet):
    """Exaktheit von B(kJ(w, L))"""
    command = LanguagesVerifyCommand(tuple(words), regex, dfa_path, alphabet)
    _run(ctx, lambda h: h.handle_languages_verify(command))


@lang.command()
@module_option
@click.option("--max", "max_n", type=int, required=True)
@click.option("--order-max-d", type=int, default=3, show_default=True)
@click.option("--order-max-n", type=int, default=5, show_default=True)
@click.pass_context
def init(ctx, module_path, max_n, order_max_d, order_max_n):
    """Wortordnungs-Axiom und Initialmodul"""
    command = InitIdealCommand(module_path, max_n, order_max_d, order_max_n)
    _run(ctx, lambda h: h.handle_init_ideal(command))


# =====================================================
# Einstieg
# =====================================================

def execute(argv: Sequence[str]) -> int:
    """
    Führt die CLI aus und liefert den Exit-Code
    0 pass, 2 fail, 3 hypotheses-unmet, 1 Bedienungs- oder Eingabefehler
    """
    try:
        result = cli.main(args=list(argv), prog_name="fsopkit", standalone_mode=False)
    except click.ClickException as exc:
        _fail(exc.format_message())
        return 1
    except click.Abort:
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main()
