"""Command-line front end: ``statesum4 <command> [action] FILE [flags]``."""

import argparse
import sys
from collections.abc import Sequence
from typing import TextIO

from pydantic import ValidationError

from .algebra.cocycle import (
    FourCochain,
    averaged_identity_check,
    check_cocycle,
    coboundary,
    dump_cochain,
    load_four_cochain,
    load_three_cochain,
    random_three_cochain,
    trivial_cocycle,
)
from .algebra.groups import FiniteGroup, group_from_spec
from .category.catdata import from_group_cocycle, load_data, save_data
from .category.verify import verify_data
from .core.config import EngineOption, settings
from .core.exceptions.base import StateSumError
from .core.logger import logging, set_level
from .core.schemas import VersionInfo
from .core.utils.textfile import read_text, write_text
from .engine.invariant import evaluate, invariant, invariant_group_fast
from .schemas.cli import CommandSpec
from .schemas.homcount import HomCountReport
from .topology.complex import Triangulation4, dump_triangulation, load_triangulation, orient, validate
from .topology.homcount import count_homs, presentation
from .topology.pachner import apply_move, enumerate_moves, locate_move, random_walk

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-o", "--output")
    common.add_argument("--log-level")

    group_flags = argparse.ArgumentParser(add_help=False)
    group_flags.add_argument("--group", help="cyclic:n, sym:n, prod:A,B or file:path")
    group_flags.add_argument("--cocycle", help="4-cochain file")
    group_flags.add_argument("--cochain3", help="3-cochain file; its coboundary is used")

    parser = argparse.ArgumentParser(prog=settings.APP_NAME, description=settings.APP_DESCRIPTION)
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("validate", parents=[common]).add_argument("paths", nargs=1)
    commands.add_parser("orient", parents=[common]).add_argument("paths", nargs=1)

    moves = commands.add_parser("moves").add_subparsers(dest="action", required=True)
    moves.add_parser("list", parents=[common]).add_argument("paths", nargs=1)
    apply = moves.add_parser("apply", parents=[common])
    apply.add_argument("paths", nargs=1)
    apply.add_argument("--kind", required=True)
    apply.add_argument("--support", type=int, nargs="+", required=True)
    walk = moves.add_parser("walk", parents=[common])
    walk.add_argument("paths", nargs=1)
    walk.add_argument("--steps", type=int, default=1)
    walk.add_argument("--max-vertices", type=int)

    inv = commands.add_parser("invariant", parents=[common, group_flags])
    inv.add_argument("paths", nargs=1)
    inv.add_argument("--data", help="spherical data file")
    inv.add_argument("--engine", choices=[e.value for e in EngineOption])
    inv.add_argument("--workers", type=int)
    inv.add_argument("--budget", type=int)

    cocycle = commands.add_parser("cocycle").add_subparsers(dest="action", required=True)
    check = cocycle.add_parser("check", parents=[common, group_flags])
    check.add_argument("--averaged", action="store_true", help="also check the averaged 1-5 identity")
    check.add_argument("--literal", action="store_true", help="use the literal sign pattern for --averaged")
    cob = cocycle.add_parser("coboundary", parents=[common, group_flags])
    cob.add_argument("--random", dest="modulus", type=int, metavar="N", help="random normalized 3-cochain mod N")

    data = commands.add_parser("data").add_subparsers(dest="action", required=True)
    data.add_parser("build", parents=[common, group_flags])
    verify = data.add_parser("verify", parents=[common])
    verify.add_argument("paths", nargs=1)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--no-hexagon", dest="hexagon", action="store_false", default=None)

    homs = commands.add_parser("homs", parents=[common])
    homs.add_argument("paths", nargs=1)
    homs.add_argument("--group")
    homs.add_argument("--budget", type=int)

    commands.add_parser("version", parents=[common])
    return parser


def parse_command(argv: Sequence[str]) -> CommandSpec:
    namespace = build_parser().parse_args(list(argv))
    fields = {k: v for k, v in vars(namespace).items() if v is not None}
    fields["paths"] = tuple(fields.get("paths", ()))
    fields["support"] = tuple(fields.get("support", ()))
    return CommandSpec(**fields)


# -------------- inputs --------------
def _triangulation(spec: CommandSpec) -> Triangulation4:
    return load_triangulation(read_text(spec.paths[0]))


def _cochain(spec: CommandSpec, group: FiniteGroup) -> FourCochain:
    if spec.cocycle is not None:
        return load_four_cochain(read_text(spec.cocycle), group)
    if spec.cochain3 is not None:
        return coboundary(load_three_cochain(read_text(spec.cochain3), group))
    return trivial_cocycle(group)


def _emit(spec: CommandSpec, text: str, out: TextIO) -> None:
    if spec.output is not None:
        write_text(spec.output, text)
        logger.info(f"Wrote {spec.output}")
    else:
        out.write(text)


# -------------- commands --------------
def _validate(spec: CommandSpec, out: TextIO) -> int:
    report = validate(_triangulation(spec))
    print(report.to_text(), file=out)
    return 0 if report.is_closed_pseudomanifold and report.is_connected else 1


def _orient(spec: CommandSpec, out: TextIO) -> int:
    print(orient(_triangulation(spec)).report().to_text(), file=out)
    return 0


def _moves(spec: CommandSpec, out: TextIO) -> int:
    T = _triangulation(spec)
    if spec.action == "list":
        for site in enumerate_moves(T):
            print(site.describe(), file=out)
        return 0
    if spec.action == "apply":
        assert spec.kind is not None
        result = apply_move(T, locate_move(T, spec.kind, spec.support))
        _emit(spec, dump_triangulation(result), out)
        return 0

    result, report = random_walk(T, spec.steps, spec.seed, max_vertices=spec.max_vertices)
    if spec.output is None:
        out.write(dump_triangulation(result))
        logger.info(report.to_text())
    else:
        write_text(spec.output, dump_triangulation(result))
        print(report.to_text(), file=out)
    return 0


def _invariant(spec: CommandSpec, out: TextIO) -> int:
    T = orient(_triangulation(spec))
    if spec.data is not None:
        value = invariant(T, load_data(read_text(spec.data)), workers=spec.workers)
    else:
        assert spec.group is not None
        group = group_from_spec(spec.group)
        value = evaluate(
            T, group, _cochain(spec, group), engine=spec.engine, workers=spec.workers, budget=spec.budget
        )
    print(value.format_canonical(), file=out)
    return 0


def _cocycle(spec: CommandSpec, out: TextIO) -> int:
    assert spec.group is not None
    group = group_from_spec(spec.group)
    if spec.action == "coboundary":
        if spec.cochain3 is not None:
            eta = load_three_cochain(read_text(spec.cochain3), group)
        else:
            assert spec.modulus is not None
            eta = random_three_cochain(group, spec.modulus, spec.seed)
        _emit(spec, dump_cochain(coboundary(eta)), out)
        return 0

    pi = _cochain(spec, group)
    checks = [check_cocycle(pi)]
    if spec.averaged and checks[0].holds:
        checks.append(averaged_identity_check(pi, literal=spec.literal))
    print("\n".join(check.to_text() for check in checks), file=out)
    return 0 if all(checks) else 1


def _data(spec: CommandSpec, out: TextIO) -> int:
    if spec.action == "build":
        assert spec.group is not None
        group = group_from_spec(spec.group)
        _emit(spec, save_data(from_group_cocycle(group, _cochain(spec, group))), out)
        return 0

    data = load_data(read_text(spec.paths[0]))
    report = verify_data(data, sample_budget=spec.samples, seed=spec.seed, check_hexagon=spec.hexagon)
    print(report.to_text(), file=out)
    return 0 if report.passed else 1


def _homs(spec: CommandSpec, out: TextIO) -> int:
    T = _triangulation(spec)
    P = presentation(T)
    if spec.group is None:
        print(f"generators: {P.generator_count}\nrelators: {len(P.relators)}", file=out)
        return 0
    group = group_from_spec(spec.group)
    count = count_homs(P, group, budget=spec.budget)
    value = invariant_group_fast(orient(T), group, trivial_cocycle(group), workers=spec.workers)
    report = HomCountReport(
        group=group.name,
        generators=P.generator_count,
        relators=len(P.relators),
        homomorphisms=count,
        invariant=value.format_canonical(),
        consistent=value * group.order == count,
    )
    print(report.to_text(), file=out)
    return 0 if report.consistent else 1


def _version(spec: CommandSpec, out: TextIO) -> int:
    info = VersionInfo(
        name=settings.APP_NAME, version=settings.APP_VERSION or "", description=settings.APP_DESCRIPTION or ""
    )
    print(f"{info.name} {info.version}", file=out)
    return 0


HANDLERS = {
    "validate": _validate,
    "orient": _orient,
    "moves": _moves,
    "invariant": _invariant,
    "cocycle": _cocycle,
    "data": _data,
    "homs": _homs,
    "version": _version,
}


def dispatch(argv: Sequence[str], out: TextIO | None = None) -> int:
    """Run one command; 0 on success, 1 on a domain error or failed check, 2 on a usage error."""
    out = sys.stdout if out is None else out
    try:
        spec = parse_command(argv)
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 2
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        print(f"usage error: {messages}", file=sys.stderr)
        return 2

    if spec.log_level is not None:
        set_level(spec.log_level)
    try:
        return HANDLERS[spec.command](spec, out)
    except StateSumError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
