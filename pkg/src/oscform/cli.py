"""Command-line front end.

Reads variety description files (`-` for stdin), dispatches to the
geometry modules, and renders deterministic text or JSON reports.  Exit
codes: 0 success, 1 domain error, 2 parse error.
"""

from __future__ import annotations

import argparse
import random
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from .errors import DomainError, ParseError
from .fundforms import (
    base_locus_pencil,
    check_jacobian_containment,
    fundamental_form,
    hyperplane_tangent_cone,
    verify_phibar_relation,
)
from .gallery import example_names, example_text
from .jets import (
    DEFAULT_SEED,
    ImplicitVariety,
    Parameterization,
    jet_parameterize,
    osculating_profile,
    osculating_space,
)
from .polyring import parse_rational
from .report import Report, fmt, fmt_point, render
from .ruled import (
    RuledParameterization,
    dim_bound_check,
    fubini_intersection_test,
    heat_equation_check,
    monge_form,
    pushdown_rank_check,
    ruled_surface_diagnostic,
    ruling_fixed_component_check,
    scroll,
    scroll_rank_check,
)
from .varfile import build_variety, parse_variety


def _read_text(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    return Path(path).read_text(encoding="utf-8"), path


def _parse_rational_tuple(text: str, flag: str) -> tuple[Fraction, ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            out.append(Fraction(part))
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"{flag}: {part!r} is not a rational number") from None
    return tuple(out)


def _load(args) -> tuple[object, Report]:
    """Parse the input file and start the report with an input echo."""
    text, name = _read_text(args.file)
    vf = parse_variety(text)
    report = Report(command=args.command)
    report.inputs["input"] = name
    report.inputs["kind"] = vf.kind
    if vf.label:
        report.inputs["label"] = vf.label
    return vf, report


def _parameter_point(args, f: Parameterization):
    """The evaluation point: --at, else the point recorded in the file."""
    at = getattr(args, "at", None)
    if at is not None:
        point = _parse_rational_tuple(at, "--at")
        if len(point) != f.source_dim:
            raise DomainError(
                f"--at has {len(point)} entries for {f.source_dim} parameters")
        return point
    return None


def _resolve_surface(vf, args, report: Report, needed_order: int,
                     use_file_point: bool = True):
    """Turn any file kind into a Parameterization plus evaluation point."""
    obj = build_variety(vf)
    if isinstance(obj, ImplicitVariety):
        if getattr(args, "at", None) is not None:
            raise DomainError(
                "implicit input is analyzed at its recorded point; --at is "
                "not supported here")
        f = jet_parameterize(obj, needed_order + 1)
        report.inputs["point"] = fmt_point(obj.point)
        report.inputs["series_order"] = needed_order + 1
        return f, tuple(Fraction(0) for _ in f.params)
    if isinstance(obj, Parameterization):
        point = _parameter_point(args, obj)
        if point is None and use_file_point:
            point = vf.point
        return obj, point
    f = scroll(obj).underlying
    return f, _parameter_point(args, f)


def _record_point_mode(report: Report, point) -> None:
    if point is not None:
        report.mode = "point"
        report.inputs["at"] = fmt_point(point)
    else:
        report.mode = "generic-symbolic"


def _as_ruled(f: Parameterization) -> RuledParameterization:
    """Longest parameter suffix in which all coordinates are affine-linear."""
    for i in range(1, f.source_dim):
        try:
            return RuledParameterization(f.params[:i], f.params[i:], f.coords,
                                         label=f.label)
        except DomainError:
            continue
    raise DomainError(
        "no fiber parameters detected: no parameter suffix is jointly "
        "affine-linear across the coordinates")


def _cmd_osc(args) -> Report:
    vf, report = _load(args)
    f, point = _resolve_surface(vf, args, report, args.order)
    if args.max:
        profile = osculating_profile(f, args.order, point=point,
                                     symbolic=args.symbolic, rng=args.seed)
        report.mode = profile.mode
        if point is not None:
            report.inputs["at"] = fmt_point(point)
        if profile.sample_points:
            report.sampled_points = [fmt_point(p) for p in profile.sample_points]
        if profile.mode == "generic-sampled":
            report.inputs["seed"] = args.seed if args.seed is not None else DEFAULT_SEED
        report.add("dims", list(profile.dims))
        return report
    if point is not None:
        space = osculating_space(f, args.order, point)
        report.mode = "point"
        report.inputs["at"] = fmt_point(point)
        report.add("dim", space.dim - 1)
        report.add("basis", [fmt_point(row) for row in space.basis])
        return report
    profile = osculating_profile(f, args.order, symbolic=args.symbolic,
                                 rng=args.seed)
    report.mode = profile.mode
    if profile.sample_points:
        report.sampled_points = [fmt_point(p) for p in profile.sample_points]
    if profile.mode == "generic-sampled":
        report.inputs["seed"] = args.seed if args.seed is not None else DEFAULT_SEED
    report.add("dim", profile.dims[-1])
    return report


def _cmd_fundform(args) -> Report:
    vf, report = _load(args)
    f, point = _resolve_surface(vf, args, report, args.order)
    system = fundamental_form(f, args.order, point=point)
    _record_point_mode(report, point)
    report.add("degree", system.degree)
    report.add("generator_count", system.generator_count)
    report.add("projective_dim", system.projective_dim)
    report.add("generators", [str(g) for g in system.generators])
    return report


def _cmd_jacobian_check(args) -> Report:
    vf, report = _load(args)
    f, point = _resolve_surface(vf, args, report, args.order)
    result = check_jacobian_containment(f, args.order, point=point)
    _record_point_mode(report, point)
    report.add("order", result.order)
    report.add("contained", result.contained)
    report.add("equal", result.equal)
    report.add("jacobian_dim", result.jacobian_dim)
    report.add("previous_dim", result.previous_dim)
    report.add("note", result.note)
    return report


def _cmd_phibar_check(args) -> Report:
    vf, report = _load(args)
    # The relation is an identity over the function field; a point is
    # only a specialization certificate, so use one on --at only.
    f, point = _resolve_surface(vf, args, report, args.order,
                                use_file_point=False)
    if getattr(args, "at", None) is None:
        point = None
    result = verify_phibar_relation(f, args.order, point=point)
    _record_point_mode(report, point)
    report.mode = "generic-symbolic" if point is None else report.mode
    report.add("order", result.order)
    report.add("holds", result.holds)
    report.add("lower_order_vanishes", result.lower_order_vanishes)
    report.add("symmetric_part_matches", result.symmetric_part_matches)
    report.add("factor", f"-{result.order}")
    return report


def _cmd_base_locus(args) -> Report:
    vf, report = _load(args)
    f, point = _resolve_surface(vf, args, report, args.order)
    system = fundamental_form(f, args.order, point=point)
    result = base_locus_pencil(system)
    _record_point_mode(report, point)
    report.add("degree", system.degree)
    report.add("generators", [str(g) for g in system.generators])
    report.add("has_base_point", result.has_base_point)
    report.add("common_factor",
               str(result.common_factor) if result.common_factor else "none")
    report.add("base_points", [fmt_point(p) for p in result.base_points])
    report.add("note", result.note)
    return report


def _cmd_tangent_cone(args) -> Report:
    vf, report = _load(args)
    f, point = _resolve_surface(vf, args, report, args.max_order)
    h = _parse_rational_tuple(args.hyperplane, "--hyperplane")
    result = hyperplane_tangent_cone(f, h, point=point, max_order=args.max_order)
    _record_point_mode(report, point)
    report.inputs["hyperplane"] = fmt_point(h)
    report.add("vanishing_order", result.order)
    report.add("tangent_cone", str(result.form))
    return report


def _cmd_scroll(args) -> Report:
    vf, report = _load(args)
    spec = build_variety(vf)
    if not hasattr(spec, "degrees"):
        raise DomainError("the scroll command needs a file with kind: scroll")
    orders = [args.order] if args.order else list(range(1, spec.degrees[0] + 1))
    report.mode = "generic-symbolic"
    all_ok = True
    for m in orders:
        rc = scroll_rank_check(spec, m)
        pd = pushdown_rank_check(spec, m)
        all_ok = all_ok and rc.match and pd.match
        report.add(
            f"m={m}",
            f"rank {rc.rank} expected {rc.expected} "
            f"({'ok' if rc.match else 'MISMATCH'}); pushdown blocks "
            f"{pd.block_ranks} expected {pd.expected_ranks} structure "
            f"{'ok' if pd.structure_ok else 'BROKEN'}")
    report.add("all_match", all_ok)
    return report


def _cmd_ruling_check(args) -> Report:
    vf, report = _load(args)
    obj = build_variety(vf)
    if hasattr(obj, "degrees"):
        ruled = scroll(obj)
    elif isinstance(obj, Parameterization):
        ruled = _as_ruled(obj)
    else:
        raise DomainError("ruling-check needs a parameterization or scroll file")
    point = None
    if getattr(args, "at", None) is not None:
        point = _parse_rational_tuple(args.at, "--at")
    result = ruling_fixed_component_check(ruled, args.order, point=point)
    bound = dim_bound_check(ruled, args.order)
    _record_point_mode(report, point)
    report.inputs["base_params"] = " ".join(ruled.base_params)
    report.inputs["fiber_params"] = " ".join(ruled.fiber_params)
    report.add("generators", [str(g) for g in result.system.generators])
    report.add("all_members_contain_ruling", result.all_members_contain_ruling)
    report.add("monomial_support_ok", result.monomial_support_ok)
    report.add("singular_along_ruling",
               "n/a" if result.singular_along_ruling is None
               else result.singular_along_ruling)
    report.add("fixed_component", result.fixed_component or "none")
    report.add("dim", bound.dim)
    report.add("bound", bound.bound)
    report.add("within_bound", bound.ok)
    return report


def _cmd_monge(args) -> Report:
    vf, report = _load(args)
    obj = build_variety(vf)
    if isinstance(obj, ImplicitVariety):
        point = None
        if getattr(args, "at", None) is not None:
            point = _parse_rational_tuple(args.at, "--at")
        md = monge_form(obj, point, order=args.order)
    elif isinstance(obj, Parameterization):
        point = _parameter_point(args, obj) or vf.point
        if point is None:
            raise DomainError("monge needs --at or a point recorded in the file")
        md = monge_form(obj, point, order=args.order)
    else:
        md = monge_form(scroll(obj).underlying,
                        _parameter_point(args, scroll(obj).underlying),
                        order=args.order)
    report.mode = "point"
    report.inputs["order"] = args.order
    report.add("ambient_point", fmt_point(md.ambient_point))
    if md.parameter_point is not None:
        report.add("parameter_point", fmt_point(md.parameter_point))
    report.add("chart_rows", [fmt_point(md.chart.row(i)) for i in range(4)])
    report.add("f2", str(md.f2))
    report.add("f3", str(md.f3))
    report.add("f4", str(md.f4))
    try:
        fubini = fubini_intersection_test(md)
        report.add("resultant", fmt(fubini.resultant))
        report.add("intersects", fubini.intersects)
    except DomainError:
        report.add("resultant", "degenerate: f2 = 0")
    return report


def _cmd_ruled_test(args) -> Report:
    vf, report = _load(args)
    obj = build_variety(vf)
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    rng = random.Random(seed)
    explicit = [_parse_rational_tuple(a, "--at") for a in (args.at or [])]
    if isinstance(obj, ImplicitVariety):
        samples = explicit or [obj.point]
    else:
        if hasattr(obj, "degrees"):
            obj = scroll(obj).underlying
        samples = list(explicit)
        while len(samples) < args.samples:
            samples.append(tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 6))
                                 for _ in obj.params))
    diag = ruled_surface_diagnostic(obj, samples, order=args.order,
                                    rng=seed, jobs=args.jobs)
    report.mode = "point"
    report.inputs["seed"] = seed
    report.inputs["order"] = args.order
    report.sampled_points = [fmt_point(p.point) for p in diag.points]
    if diag.projection is not None:
        report.add("projection_rows",
                   [fmt_point(diag.projection.row(i)) for i in range(4)])
    for p in diag.points:
        if p.error is not None:
            report.add(f"point {fmt_point(p.point)}", f"error: {p.error}")
            continue
        dirs = "; ".join(
            f"{d.direction} contact {d.contact if d.evaluated else 'unevaluated'}"
            for d in p.directions) or "no common direction"
        report.add(
            f"point {fmt_point(p.point)}",
            f"intersects {fmt(p.intersects)} (resultant {fmt(p.resultant)}); {dirs}")
    report.add("verdict", diag.verdict)
    report.add("disclaimer", diag.disclaimer)
    return report


def _cmd_heat_check(args) -> Report:
    vf, report = _load(args)
    obj = build_variety(vf)
    if hasattr(obj, "degrees"):
        obj = scroll(obj).underlying
    if not isinstance(obj, Parameterization):
        raise DomainError("heat-check needs a parameterized surface")
    phi = parse_rational(args.phi, obj.params)
    satisfied = heat_equation_check(obj, phi, x_var=args.x_var, y_var=args.y_var)
    report.mode = "generic-symbolic"
    report.inputs["phi"] = args.phi
    report.add("satisfied", satisfied)
    return report


def _cmd_implicit_jet(args) -> Report:
    vf, report = _load(args)
    obj = build_variety(vf)
    if not isinstance(obj, ImplicitVariety):
        raise DomainError("implicit-jet needs a file with kind: implicit")
    f = jet_parameterize(obj, args.order)
    report.mode = "point"
    report.inputs["point"] = fmt_point(obj.point)
    report.inputs["order"] = args.order
    report.add("params", " ".join(f.params))
    report.add("truncated_order", f.truncated_order)
    report.add("coords", [str(c) for c in f.coords])
    return report


def _cmd_example(args):
    text = example_text(args.name)
    if args.format == "json":
        report = Report(command="example")
        report.inputs["name"] = args.name
        report.add("text", text)
        return report
    return text


def _add_common(sub, order_default=None, order_required=False, with_at=True):
    sub.add_argument("file", help="variety file path, or - for stdin")
    if order_required:
        sub.add_argument("--order", type=int, required=True,
                         help="jet / form order m")
    else:
        sub.add_argument("--order", type=int, default=order_default,
                         help=f"jet / form order m (default {order_default})")
    if with_at:
        sub.add_argument("--at", help="rational evaluation point, e.g. 1,-2/3")
    sub.add_argument("--format", choices=("text", "json"), default="text")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscform",
        description="Osculating spaces, fundamental forms, and ruledness "
                    "diagnostics for parameterized projective varieties.")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("osc", help="osculating space dimensions / basis")
    _add_common(p, order_required=True)
    p.add_argument("--max", action="store_true",
                   help="report s(0..m) instead of order m only")
    p.add_argument("--symbolic", action="store_true",
                   help="certify generic ranks over the function field")
    p.add_argument("--seed", type=int, help="seed for generic-point sampling")
    p.set_defaults(handler=_cmd_osc)

    p = commands.add_parser("fundform", help="generators of the m-th fundamental form")
    _add_common(p, order_required=True)
    p.set_defaults(handler=_cmd_fundform)

    p = commands.add_parser("jacobian-check",
                            help="Jacobian of form m against form m-1")
    _add_common(p, order_default=3)
    p.set_defaults(handler=_cmd_jacobian_check)

    p = commands.add_parser("phibar-check",
                            help="top-block representative equals -m times the form")
    _add_common(p, order_default=2)
    p.set_defaults(handler=_cmd_phibar_check)

    p = commands.add_parser("base-locus", help="base locus of a pencil of binary forms")
    _add_common(p, order_default=2)
    p.set_defaults(handler=_cmd_base_locus)

    p = commands.add_parser("tangent-cone",
                            help="tangent cone of a hyperplane section")
    p.add_argument("file", help="variety file path, or - for stdin")
    p.add_argument("--hyperplane", required=True,
                   help="comma-separated hyperplane coefficients")
    p.add_argument("--at", help="rational evaluation point")
    p.add_argument("--max-order", type=int, default=12,
                   help="largest vanishing order to search")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_tangent_cone)

    p = commands.add_parser("scroll", help="scroll jet ranks and block structure")
    p.add_argument("file", help="variety file path, or - for stdin")
    p.add_argument("--order", type=int,
                   help="single order m (default: all 1..d0)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_scroll)

    p = commands.add_parser("ruling-check",
                            help="fixed-component structure of a ruled variety")
    _add_common(p, order_default=2)
    p.set_defaults(handler=_cmd_ruling_check)

    p = commands.add_parser("monge", help="local graph form of a surface in P^3")
    _add_common(p, order_default=4)
    p.set_defaults(handler=_cmd_monge)

    p = commands.add_parser("ruled-test", help="sampled ruledness diagnostic")
    p.add_argument("file", help="variety file path, or - for stdin")
    p.add_argument("--order", type=int, default=4, help="Monge expansion order")
    p.add_argument("--at", action="append",
                   help="sample point (repeatable); random points fill the rest")
    p.add_argument("--samples", type=int, default=5, help="number of sample points")
    p.add_argument("--seed", type=int, help="seed for sample points and projection")
    p.add_argument("--jobs", type=int, default=1,
                   help="thread count for independent sample points")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_ruled_test)

    p = commands.add_parser("heat-check",
                            help="divided heat equation D_yy f = phi * D_x f")
    p.add_argument("file", help="variety file path, or - for stdin")
    p.add_argument("--phi", default="1", help="factor phi as an expression")
    p.add_argument("--x-var", help="first-order variable (default: first parameter)")
    p.add_argument("--y-var", help="second-order variable (default: second parameter)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_heat_check)

    p = commands.add_parser("implicit-jet",
                            help="series parameterization of an implicit variety")
    p.add_argument("file", help="variety file path, or - for stdin")
    p.add_argument("--order", type=int, default=4, help="series truncation order")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_implicit_jet)

    p = commands.add_parser("example", help="print a built-in example file")
    p.add_argument("name", help="one of: " + ", ".join(example_names()))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_example)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = args.handler(args)
        if isinstance(result, str):
            sys.stdout.write(result)
        else:
            for w in caught:
                result.warnings.append(str(w.message))
            sys.stdout.write(render(result, args.format))
        return 0
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
