import argparse
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from affhecke import __version__
from affhecke.braidwords import parse_word
from affhecke.config import conventions_header, get_config_sources, load_config, validate_config
from affhecke.errors import AffHeckeError, DimensionMismatchError, InputParseError, NonReducedWordError
from affhecke.hecke import hecke_algebra, standard_coords_to_json
from affhecke.kernelcalc import KernelCalculus, element_from_reduced_word
from affhecke.klpoly import component_multiplicity, kl_table
from affhecke.koszulcheck import hilbert_series_check, koszul_homology, parse_qpoly_file, sl2_steinberg_chart
from affhecke.polyrep import CharFunc, polynomial_representation
from affhecke.rootdata import RootDatum, Weight, build_root_datum
from affhecke.utils.serialization import dump_json, rows_to_csv
from affhecke.weylgroups import AffWeylElt, affine_weyl_group, format_word, weyl_group

EXIT_PASS = 0
EXIT_FAILED_CHECK = 1

BUILTIN_KOSZUL_INPUTS = {"sl2-steinberg": sl2_steinberg_chart}


@dataclass
class CliConfig:
    """Everything a command depends on; identical configs give identical output."""

    type_spec: str
    radius: int = 2
    max_degree: int = 6
    output_format: str = "text"
    verbose: bool = False
    overrides: Dict[str, str] = field(default_factory=dict)

    def conventions(self) -> Dict[str, str]:
        header = conventions_header()
        if "convolution_order" in self.overrides:
            header["convolution_order"] = self.overrides["convolution_order"]
        if "shift_v_power" in self.overrides:
            header["shift"] = f"<j> -> v^({self.overrides['shift_v_power']}*j)"
        return header

    def datum(self) -> RootDatum:
        return build_root_datum(self.type_spec)


class Output:
    """Writes one artifact in the configured format; diagnostics go to stderr."""

    def __init__(self, config: CliConfig):
        self.config = config
        self.stdout = Console(highlight=False)
        self.stderr = Console(stderr=True)

    def emit(self, payload: Dict, header: Sequence[str], rows: Sequence[Sequence], title: str) -> None:
        conventions = self.config.conventions()
        fmt = self.config.output_format
        if fmt == "json":
            self.stdout.out(dump_json(payload, conventions), highlight=False)
        elif fmt == "csv":
            self.stdout.out(rows_to_csv(header, rows, conventions), end="", highlight=False)
        else:
            self._text(header, rows, title, conventions)

    def _text(self, header: Sequence[str], rows: Sequence[Sequence], title: str, conventions: Dict[str, str]) -> None:
        convention_table = Table(title="[bold cyan]Conventions[/bold cyan]", show_header=False)
        convention_table.add_column("Key", style="cyan")
        convention_table.add_column("Value", style="green")
        for key in sorted(conventions):
            convention_table.add_row(escape(key), escape(conventions[key]))
        self.stdout.print(convention_table)
        table = Table(title=f"[bold cyan]{escape(title)}[/bold cyan]")
        for column in header:
            table.add_column(column)
        for row in rows:
            table.add_row(*(escape(str(cell)) for cell in row))
        self.stdout.print(table)

    def status(self, passed: bool, message: str) -> None:
        if passed:
            self.stderr.print(f"[green]✔ {message}[/green]")
        else:
            self.stderr.print(f"[bold red]✘ {message}[/bold red]")


def _parse_weight(text: Optional[str], datum: RootDatum) -> Weight:
    if not text:
        return datum.zero
    try:
        weight = tuple(int(part) for part in text.replace(" ", "").strip("()[]").split(","))
    except ValueError as e:
        raise InputParseError(f"cannot parse weight {text!r}; expected integers like '1,0'") from e
    if len(weight) != datum.rank:
        raise DimensionMismatchError(f"weight {text!r} has {len(weight)} entries, {datum.name} has rank {datum.rank}")
    return weight


def _finite_word(text: str, datum: RootDatum) -> Tuple[int, ...]:
    # rank one: a bare "s" is the only simple reflection
    if datum.rank == 1 and text.strip() == "s":
        text = "s1"
    word = parse_word(text)
    if any(i < 1 or i > datum.rank for i in word):
        raise InputParseError(f"{text!r} uses labels outside 1..{datum.rank}")
    return word


def _finite_element(text: str, datum: RootDatum):
    return weyl_group(datum).element_from_word(_finite_word(text, datum))


def _affine_element(text: str, datum: RootDatum) -> AffWeylElt:
    group = affine_weyl_group(datum)
    labels = parse_word(text)
    unknown = [label for label in labels if label not in group.labels()]
    if unknown:
        raise InputParseError(f"{text!r} uses labels {unknown} outside S_aff = {group.labels()}")
    return group.element_from_word(labels)


def cmd_relations(config: CliConfig, output: Output, args) -> int:
    datum = config.datum()
    rep = polynomial_representation(datum)
    report = rep.verify_presentation(
        config.radius,
        monomial_radius=args.monomial_radius,
        console=output.stderr,
        show_progress=config.verbose,
    )
    quadratic = {
        label: not any(
            rep.quadratic_defect(label, CharFunc.monomial(mu)) for mu in datum.weight_box(1)
        )
        for label in affine_weyl_group(datum).labels()
    }
    payload = report.to_json()
    payload["quadratic"] = {str(label): ok for label, ok in quadratic.items()}
    rows = [[tag, count] for tag, count in sorted(report.counts().items())]
    rows += [[f"failure ({result.tag})", result.relation] for result in report.failures]
    rows += [[f"quadratic s{label}", "ok" if ok else "FAILED"] for label, ok in quadratic.items()]
    output.emit(payload, ["relation", "instances"], rows, f"Bernstein relations on {datum.name}")
    passed = report.passed and all(quadratic.values())
    output.status(passed, f"{len(report.results)} relation instances on {datum.name}")
    return EXIT_PASS if passed else EXIT_FAILED_CHECK


def cmd_kl(config: CliConfig, output: Output, args) -> int:
    datum = config.datum()
    if args.pair:
        y = _finite_element(args.pair[0], datum)
        w = _finite_element(args.pair[1], datum)
        table = kl_table(datum, up_to=w)
        polynomial = table.P(y, w)
        multiplicity = component_multiplicity(y, w, table)
        payload = {
            "type": datum.name,
            "y": format_word(y.reduced_word),
            "w": format_word(w.reduced_word),
            "P": polynomial.format("q"),
            "value_at_1": polynomial.evaluate(1),
            "multiplicity": multiplicity.to_json(),
        }
        rows = [[payload["y"], payload["w"], payload["P"], payload["value_at_1"], multiplicity.provenance]]
        output.emit(payload, ["y", "w", "P", "value_at_1", "multiplicity"], rows, f"KL polynomial in {datum.name}")
        return EXIT_PASS
    table = kl_table(datum)
    output.emit(table.to_json(), ["y", "w", "P", "value_at_1"], table.to_csv_rows(), f"KL polynomials of {datum.name}")
    return EXIT_PASS


def cmd_kernel(config: CliConfig, output: Output, args) -> int:
    datum = config.datum()
    w = element_from_reduced_word(datum, _finite_word(args.word, datum))
    calculus = KernelCalculus(
        datum,
        convolution_order=config.overrides.get("convolution_order"),
        shift_v_power=int(config.overrides["shift_v_power"]) if "shift_v_power" in config.overrides else None,
    )
    kernel = calculus.kernel_class(w, _parse_weight(args.twist_left, datum), _parse_weight(args.twist_right, datum), args.shift)
    report = calculus.verify_reduced_word_convolution(w, console=output.stderr, show_progress=config.verbose)
    payload = kernel.to_json()
    payload.pop("conventions")
    payload["type"] = datum.name
    payload["value_text"] = str(kernel.value)
    payload["convolution"] = report.to_json()
    rows = [[format_word(check.word), str(check.value), "ok" if check.passed else "FAILED"] for check in report.checks]
    rows.insert(0, ["class", str(kernel.value), ""])
    output.emit(payload, ["word", "value", "agrees"], rows, f"Kernel class of {format_word(w.reduced_word)}")
    output.status(report.passed, f"{len(report.checks)} reduced words convolve to the same class")
    return EXIT_PASS if report.passed else EXIT_FAILED_CHECK


def cmd_hecke_mul(config: CliConfig, output: Output, args) -> int:
    datum = config.datum()
    algebra = hecke_algebra(datum)
    a = _affine_element(args.left, datum)
    b = _affine_element(args.right, datum)
    product = algebra.basis(a) * algebra.basis(b)
    payload = {"type": datum.name, "left": str(a), "right": str(b), "product": product.to_json()}
    rows = [[str(element), coeff.format()] for element, coeff in product.sorted_terms()]
    output.emit(payload, ["element", "coefficient"], rows, f"T[{a}] * T[{b}]")
    return EXIT_PASS


def cmd_basis(config: CliConfig, output: Output, args) -> int:
    datum = config.datum()
    algebra = hecke_algebra(datum)
    a = _affine_element(args.element, datum)
    h = algebra.basis(a)
    coords = algebra.to_standard_basis(h, args.side)
    round_trip = algebra.from_standard_basis(coords, args.side) == h
    payload = {
        "type": datum.name,
        "element": str(a),
        "side": args.side,
        "coordinates": standard_coords_to_json(coords),
        "round_trip": round_trip,
    }
    rows = [[format_word(w.reduced_word), ",".join(str(c) for c in x), c.format()] for (w, x), c in _sorted_coords(coords)]
    output.emit(payload, ["w", "x", "coefficient"], rows, f"T[{a}] in the {args.side} standard basis")
    output.status(round_trip, "standard-basis round trip")
    return EXIT_PASS if round_trip else EXIT_FAILED_CHECK


def _sorted_coords(coords):
    return sorted(coords.items(), key=lambda item: (item[0][0].length, str(item[0][0]), item[0][1]))


def cmd_koszul(config: CliConfig, output: Output, args) -> int:
    if args.input in BUILTIN_KOSZUL_INPUTS:
        gens = BUILTIN_KOSZUL_INPUTS[args.input]()
    else:
        gens = parse_qpoly_file(args.input)
    report = koszul_homology(gens, config.max_degree, console=output.stderr, show_progress=config.verbose)
    payload = {"input": args.input, "koszul": report.to_json()}
    passed = report.regular_in_window
    if report.graded:
        hilbert = hilbert_series_check(gens, config.max_degree)
        payload["hilbert"] = hilbert.to_json()
    rows = [[f"H{p}"] + report.dims(p) for p in range(report.length + 1)]
    header = ["homology"] + [str(d) for d in range(config.max_degree + 1)]
    output.emit(payload, header, rows, f"Koszul homology of {args.input}")
    if report.caveat:
        output.stderr.print(f"[yellow]{report.caveat}[/yellow]")
    output.status(passed, f"higher Koszul homology vanishes through degree {config.max_degree}")
    return EXIT_PASS if passed else EXIT_FAILED_CHECK


def cmd_omega(config: CliConfig, output: Output, args) -> int:
    datum = config.datum()
    elements = affine_weyl_group(datum).omega_elements()
    index = datum.index_of_connection()
    passed = len(elements) == index and all(a.length == 0 for a in elements)
    payload = {
        "type": datum.name,
        "order": len(elements),
        "index_of_connection": index,
        "elements": [dict(a.to_json(), element=str(a), length=a.length) for a in elements],
        "passed": passed,
    }
    rows = [[str(a), a.length] for a in elements]
    output.emit(payload, ["element", "length"], rows, f"Length-zero elements of {datum.name}")
    output.status(passed, f"|Omega| = {len(elements)}, |X/ZR| = {index}")
    return EXIT_PASS if passed else EXIT_FAILED_CHECK


def cmd_lengths(config: CliConfig, output: Output, args) -> int:
    datum = config.datum()
    distances = affine_weyl_group(datum).cayley_distances(args.max_length)
    mismatches = [(a, d) for a, d in distances.items() if a.length != d]
    by_length: Dict[int, int] = {}
    for d in distances.values():
        by_length[d] = by_length.get(d, 0) + 1
    payload = {
        "type": datum.name,
        "max_length": args.max_length,
        "elements": len(distances),
        "by_length": {str(d): n for d, n in sorted(by_length.items())},
        "mismatches": [{"element": str(a), "distance": d, "length": a.length} for a, d in mismatches],
        "passed": not mismatches,
    }
    rows = [[d, n] for d, n in sorted(by_length.items())]
    output.emit(payload, ["length", "elements"], rows, f"Cayley distances in the affine Weyl group of {datum.name}")
    output.status(not mismatches, f"length formula agrees with {len(distances)} Cayley distances")
    return EXIT_PASS if not mismatches else EXIT_FAILED_CHECK


COMMANDS = {
    "relations": cmd_relations,
    "kl": cmd_kl,
    "kernel": cmd_kernel,
    "hecke-mul": cmd_hecke_mul,
    "basis": cmd_basis,
    "koszul": cmd_koszul,
    "omega": cmd_omega,
    "lengths": cmd_lengths,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="type_spec", default="A2", help="Root datum: A3, B2, A1xA1, or a JSON Cartan matrix (default: A2)")
    common.add_argument("--format", dest="output_format", choices=["json", "csv", "text"], default="text", help="Output format (default: text)")
    common.add_argument("--verbose", action="store_true", help="Show progress of batch verifications on stderr")
    common.add_argument("--convolution-order", choices=["exchanged", "direct"], help="Override the convolution factor order")
    common.add_argument("--shift-v-power", type=int, help="Override the v-power of the grading shift <1>")

    parser = argparse.ArgumentParser(
        prog="affhecke",
        description="affhecke - exact computations in affine Hecke algebras",
        epilog="Examples:\n  affhecke relations --type A2 --radius 2\n  affhecke kl --type A3 --pair s2 s2s1s3s2\n  affhecke kernel --type A2 --word 's1 s2 s1' --format json\n  affhecke koszul sl2-steinberg --max-degree 6",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"affhecke {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    relations = sub.add_parser("relations", parents=[common], help="Verify the Bernstein presentation in the polynomial representation")
    relations.add_argument("--radius", type=int, default=2, help="Weight box radius of the relation instances (default: 2)")
    relations.add_argument("--monomial-radius", type=int, default=None, help="Radius of the test monomials (default: radius + 1)")

    kl = sub.add_parser("kl", parents=[common], help="Kazhdan-Lusztig polynomials and component multiplicities")
    kl.add_argument("--pair", nargs=2, metavar=("Y", "W"), help="Only P_{y,w}, e.g. --pair s2 s2s1s3s2")

    kernel = sub.add_parser("kernel", parents=[common], help="Class of a Steinberg kernel and the reduced-word convolution check")
    kernel.add_argument("--word", default="", help="Reduced word of w, e.g. 's1 s2 s1' (default: identity)")
    kernel.add_argument("--twist-left", default=None, help="Weight of the first twist slot, e.g. '1,0'")
    kernel.add_argument("--twist-right", default=None, help="Weight of the second twist slot")
    kernel.add_argument("--shift", type=int, default=0, help="Grading shift <j>")

    hecke_mul = sub.add_parser("hecke-mul", parents=[common], help="Multiply two Iwahori-Matsumoto basis elements")
    hecke_mul.add_argument("--left", default="", help="Word in S_aff labels, e.g. 's0 s1'")
    hecke_mul.add_argument("--right", default="", help="Word in S_aff labels")

    basis = sub.add_parser("basis", parents=[common], help="Coordinates of T_w in a standard basis")
    basis.add_argument("--element", default="", help="Word in S_aff labels")
    basis.add_argument("--side", choices=["left", "right"], default="left", help="left: T_w theta_x, right: theta_x T_w")

    koszul = sub.add_parser("koszul", parents=[common], help="Koszul homology of a polynomial sequence")
    koszul.add_argument("input", help="JSON generator file or the builtin 'sl2-steinberg'")
    koszul.add_argument("--max-degree", type=int, default=6, help="Internal degree window (default: 6)")

    sub.add_parser("omega", parents=[common], help="The length-zero subgroup and its order")

    lengths = sub.add_parser("lengths", parents=[common], help="Length formula against Cayley-graph distances")
    lengths.add_argument("--max-length", type=int, default=4, help="Breadth-first search depth (default: 4)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    affhecke command line entry point.

    Returns the exit code: 0 pass, 1 failed check, 2 input error,
    3 resource bound, 4 non-reduced word.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {}
    if args.convolution_order:
        overrides["convolution_order"] = args.convolution_order
    if args.shift_v_power is not None:
        overrides["shift_v_power"] = str(args.shift_v_power)
    config = CliConfig(
        type_spec=args.type_spec,
        radius=getattr(args, "radius", 2),
        max_degree=getattr(args, "max_degree", 6),
        output_format=args.output_format,
        verbose=args.verbose,
        overrides=overrides,
    )
    output = Output(config)
    stderr = output.stderr
    try:
        validate_config()
        return COMMANDS[args.command](config, output, args)
    except KeyboardInterrupt:
        stderr.print("\n[yellow]Operation cancelled[/yellow]")
        return 130
    except NonReducedWordError as e:
        stderr.print(Panel(f"[bold]{escape(str(e))}[/bold]\nShorter equivalent: {format_word(e.shorter or ())}",
                           title="[bold yellow]Non-reduced word[/bold yellow]", expand=False, border_style="yellow"))
        return e.exit_code
    except AffHeckeError as e:
        stderr.print(Panel(f"[bold red]{type(e).__name__}:[/] {escape(str(e))}", title="[bold red]Error[/bold red]", expand=False, border_style="red"))
        if args.verbose:
            _print_config_sources(stderr)
        return e.exit_code


def _print_config_sources(console: Console) -> None:
    """Show where the active configuration came from to help with debugging."""
    try:
        config = load_config()
        sources = get_config_sources()
    except AffHeckeError:
        return
    table = Table(title="[bold cyan]Current Configuration[/bold cyan]")
    table.add_column("Variable", style="cyan")
    table.add_column("Value", style="green")
    table.add_column("Source", style="yellow")
    for key in sorted(sources):
        table.add_row(key, escape(str(config[key])), sources[key])
    console.print(table)


if __name__ == "__main__":
    sys.exit(main())
