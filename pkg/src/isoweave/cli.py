"""``weave``: command-line access to analysis, striping, catalogues and rendering.

Exit status is 0 on success, 1 when the computation itself fails (an
unstripe search with no result, a design that cannot be named, unreadable
pattern text) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .pattern import ParseError, PeriodicPattern, parse_pattern, order_info


class DomainFailure(Exception):
    """A well-formed request whose answer is a failure."""


class UsageError(Exception):
    pass


def _read(path: str) -> PeriodicPattern:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    try:
        return parse_pattern(text)
    except ParseError as e:
        raise DomainFailure(f"{path}: {e}") from e


def _emit(data: bytes | str, out: str | None) -> None:
    if isinstance(data, str):
        data = data.encode()
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# -- commands -----------------------------------------------------------------


def cmd_analyze(args) -> int:
    from .naming import NamingRefused, canonical_name
    from .species import species_signature
    from .symmetry import lattice_units, symmetry_group
    from .topology import fall_apart_mode, hangs_together

    p = _read(args.file).primitive()
    info = order_info(p)
    group = symmetry_group(p)
    sig = species_signature(p, group)
    together = hangs_together(p)
    iso = group.is_transitive
    lines = [
        f"size {p.width}x{p.height}",
        f"order 20? {'yes' if info.order == 20 else f'no, order {info.order}'}",
    ]
    if not info.uniform:
        lines.append("strands have differing periods")
    if info.order < 5:
        lines.append("exceptional: order below 5")
    lines.append(f"isonemal {_yes(iso)}")
    lines.append(f"hangs together {_yes(together)}")
    if not together:
        lines.append(f"falls apart {fall_apart_mode(p).value}")
    lines.append(f"class {sig.cls.value}")
    lines.append(f"species {sig.roth_label or 'unlabelled'}" + (f" ({sig.reason})" if sig.reason else ""))
    if sig.ab_params:
        lines.append(f"ab {sig.ab_params[0]} {sig.ab_params[1]}")
    lines.append(f"G1 type {sig.g1_type.value}, H1 type {sig.h1_type.value}, H1 {sig.h1_relation.value}")
    for key, unit in lattice_units(group).items():
        lines.append(f"{key} lattice unit {unit.shape} {unit.dimensions}")
    if iso:
        try:
            lines.append(f"name {canonical_name(p, not together)}")
        except NamingRefused as e:
            lines.append(f"name refused: {e}")
    print("\n".join(lines))
    return 0


def cmd_symmetries(args) -> int:
    from .symmetry import group_report, symmetry_group

    group = symmetry_group(_read(args.file).primitive())
    print(f"{len(group)} elements modulo the {group.period[0]}x{group.period[1]} period")
    for line in group_report(group):
        print(line)
    print("axes and centres:")
    for item in group.inventory:
        print(f"  {item.describe()}")
    return 0


def cmd_stripe(args) -> int:
    from .colouring import is_perfect, make_colouring, obverse_pattern, reverse_pattern
    from .naming import NamingRefused, canonical_name
    from .symmetry import symmetry_group
    from .topology import hangs_together

    p = _read(args.file).primitive()
    try:
        colouring = make_colouring(args.mode, order=order_info(p).order, phase=args.phase)
    except ValueError as e:
        raise UsageError(str(e)) from e
    view = obverse_pattern if args.view == "obverse" else reverse_pattern
    pat = view(p, colouring)
    iso = symmetry_group(pat).is_transitive
    apart = not hangs_together(pat)
    notes = [
        f"{args.mode} striping, phase {args.phase}, {args.view}",
        f"perfect {_yes(bool(is_perfect(p, colouring)))}",
        f"isonemal {_yes(iso)}",
        f"falls apart {_yes(apart)}",
    ]
    notes += colouring.flags
    if iso:
        try:
            notes.append(f"name {canonical_name(pat, apart)}")
        except NamingRefused as e:
            notes.append(f"name refused: {e}")
    _emit(pat.serialize(notes), args.out)
    if args.out:
        print("\n".join(notes))
    return 0


def cmd_perfect(args) -> int:
    from .colouring import is_perfect, parse_colouring

    p = _read(args.file).primitive()
    text = args.colouring
    if Path(text).is_file():
        text = Path(text).read_text()
    try:
        c = parse_colouring(text)
    except ValueError as e:
        raise UsageError(str(e)) from e
    verdict = is_perfect(p, c)
    print(f"colouring {c}")
    print(f"perfect {_yes(verdict.verdict)}")
    if verdict.witness is not None:
        print(f"witness {verdict.witness}")
    return 0


def cmd_fallsapart(args) -> int:
    from .topology import fall_apart_mode, hangs_together, liftable_sets

    p = _read(args.file).primitive()
    together = hangs_together(p)
    print(f"hangs together {_yes(together)}")
    if not together:
        print(f"mode {fall_apart_mode(p).value}")
        for part in liftable_sets(p):
            print("liftable " + " ".join(sorted(str(s) for s in part)))
    return 0


def cmd_enumerate(args) -> int:
    import io

    from .catalogue import enumerate_fall_apart, verify_catalogue, write_jsonl
    from .topology import FallApartMode

    try:
        entries = enumerate_fall_apart(args.order, FallApartMode(args.mode), jobs=args.jobs)
    except ValueError as e:
        raise DomainFailure(str(e)) from e
    buf = io.StringIO()
    write_jsonl(entries, buf)
    _emit(buf.getvalue(), args.out)
    report = verify_catalogue(entries, args.order)
    stream = sys.stderr if args.out is None else sys.stdout
    print("\n".join(report.lines()), file=stream)
    return 0 if report.ok or not args.verify else 1


def cmd_unstripe(args) -> int:
    from .colouring import unstripe

    p = _read(args.file)
    try:
        result = unstripe(p, max_free=args.max_free, scale=args.scale, exhaustive=args.exhaustive)
    except ValueError as e:
        raise DomainFailure(str(e)) from e
    if not result.ok:
        print("FAILURE: no isonemal fabric stripes to this pattern")
        print(f"diagnosis: {result.diagnosis}")
        if result.obstruction:
            print(f"obstructing lattice unit {result.obstruction}")
        return 1
    stem = args.out or Path(args.file).with_suffix("").name + "-fabric"
    for k, c in enumerate(result.candidates, 1):
        path = f"{stem}-{k}.wv"
        Path(path).write_text(c.serialize([f"candidate {k} of {len(result.candidates)}, thin phase {result.phase}"]))
        print(path)
    if result.truncated:
        print("search truncated: raise --max-free to see more")
    return 0


def cmd_render(args) -> int:
    from .render import render
    from .symmetry import symmetry_group

    p = _read(args.file)
    fmt = args.format or ("svg" if args.out and args.out.endswith(".svg") else "pbm")
    overlay = symmetry_group(p.primitive()) if args.overlay else None
    if overlay is not None and fmt != "svg":
        raise UsageError("--overlay needs --format svg")
    _emit(render(p.primitive() if overlay else p, fmt, overlay), args.out)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weave", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="pattern in weave-pattern text form")
        sp.set_defaults(func=func)
        return sp

    with_file("analyze", cmd_analyze, "order, symmetry class, species, isonemality and coherence")
    with_file("symmetries", cmd_symmetries, "list the symmetry group")
    sp = with_file("stripe", cmd_stripe, "colour strands and write the resulting pattern")
    sp.add_argument("--mode", choices=["thin", "thick"], default="thin")
    sp.add_argument("--phase", type=int, default=0)
    sp.add_argument("--view", choices=["obverse", "reverse"], default="obverse")
    sp.add_argument("--out")
    sp = with_file("perfect", cmd_perfect, "test whether a strand colouring is perfect")
    sp.add_argument("--colouring", default="normal", help="'normal', 'thin N', 'thick N' or a file")
    with_file("fallsapart", cmd_fallsapart, "interlacement coherence and liftable strand sets")
    sp = sub.add_parser("enumerate", help="catalogue of isonemal designs that fall apart")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--mode", choices=["thin"], default="thin")
    sp.add_argument("--out")
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--verify", action="store_true", help="exit 1 when the catalogue checks fail")
    sp.set_defaults(func=cmd_enumerate)
    sp = with_file("unstripe", cmd_unstripe, "fabrics whose thin striping gives this pattern")
    sp.add_argument("--out", help="path prefix for candidate files")
    sp.add_argument("--scale", type=int, default=1)
    sp.add_argument("--max-free", type=int, default=16)
    sp.add_argument("--exhaustive", action="store_true", help="admit every class-preserving isometry")
    sp = with_file("render", cmd_render, "write PBM or SVG")
    sp.add_argument("--format", choices=["pbm", "svg"])
    sp.add_argument("--overlay", action="store_true", help="draw axes and centres (SVG)")
    sp.add_argument("--out")
    return ap


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"weave: {e}", file=sys.stderr)
        return 2
    except DomainFailure as e:
        print(f"weave: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
