"""Command-line surface: root-datum ingestion, queries over the library,
deterministic JSON reports, and SVG rendering of rank-2 compactified
apartments."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import apartment, gl_models, polyfan, root_data, type_geometry
from .apartment import ApartmentContext, ChartMismatchError, CompactApartmentPoint
from .polyfan import (
    Cone,
    DimensionCapError,
    FanAxiomViolation,
    IndeterminateValueError,
)
from .root_data import (
    EnumerationCapError,
    ParabolicSet,
    RootDatum,
    ValidationError,
    WeylElement,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ENUM_CAP = 3


# ---------------------------------------------------------------------------
# parsing helpers


def _parse_fraction(token: str, where: str) -> Fraction:
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{where}: {token.strip()!r} is not a rational")


def _parse_vector(text: str, rank: int, flag: str) -> Tuple[Fraction, ...]:
    tokens = [t for t in text.split(",")]
    if len(tokens) != rank:
        raise ValidationError(
            f"{flag}: expected {rank} comma-separated rationals, got {len(tokens)}"
        )
    return tuple(
        _parse_fraction(t, f"{flag} entry {i}") for i, t in enumerate(tokens)
    )


def _parse_type(text: Optional[str], datum: RootDatum, flag: str = "--type"):
    if text is None or text.strip() in ("", "none"):
        return frozenset()
    out = set()
    for raw in text.split(","):
        token = raw.strip()
        body = token[1:] if token[:1] in ("a", "A") else token
        try:
            i = int(body)
        except ValueError:
            raise ValidationError(f"{flag}: bad simple-root token {token!r}")
        if not 1 <= i <= datum.rank:
            raise ValidationError(
                f"{flag}: token {token!r} is out of range 1..{datum.rank}"
            )
        out.add(i - 1)
    return frozenset(out)


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{where}: expected integer, got {value!r}")
    return value


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}")


def _datum_from_file(path: str) -> RootDatum:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: expected a JSON object")
    if "name" in data:
        return root_data.build_named(str(data["name"]))
    if "rank" not in data or "cartan" not in data:
        raise ValidationError(f'{path}: need "name" or both "rank" and "cartan"')
    rank = _require_int(data["rank"], f'{path}: "rank"')
    if rank < 1:
        raise ValidationError(f'{path}: "rank" must be positive, got {rank}')
    cartan = data["cartan"]
    if not isinstance(cartan, list) or len(cartan) != rank:
        raise ValidationError(f'{path}: "cartan" must be a list of {rank} rows')
    rows = []
    for i, row in enumerate(cartan):
        if not isinstance(row, list) or len(row) != rank:
            raise ValidationError(
                f"{path}: cartan[{i}] must be a list of {rank} integers"
            )
        rows.append(
            tuple(
                _require_int(v, f"{path}: cartan[{i}][{j}]")
                for j, v in enumerate(row)
            )
        )
    datum = root_data.build_from_cartan(tuple(rows), name=data.get("label"))
    if "roots" in data:
        given = data["roots"]
        if not isinstance(given, list):
            raise ValidationError(f'{path}: "roots" must be a list')
        parsed = set()
        for i, root in enumerate(given):
            if not isinstance(root, list) or len(root) != rank:
                raise ValidationError(
                    f"{path}: roots[{i}] must be a list of {rank} integers"
                )
            parsed.add(
                tuple(
                    _require_int(v, f"{path}: roots[{i}][{j}]")
                    for j, v in enumerate(root)
                )
            )
        if parsed != set(datum.roots):
            raise ValidationError(
                f'{path}: "roots" does not match the root system of the Cartan matrix'
            )
    return datum


def _load_datum(args) -> RootDatum:
    if args.datum_file:
        return _datum_from_file(args.datum_file)
    if not args.datum:
        raise ValidationError("no root datum given: use --datum or --datum-file")
    name = args.datum
    if name.upper() in ("A1XA1", "A1*A1"):
        return root_data.build_from_cartan(((2, 0), (0, 2)), name="A1xA1")
    return root_data.build_named(name)


def _element_from_word(datum: RootDatum, word: Sequence[int]) -> WeylElement:
    w = root_data.identity_element(datum)
    for i in word:
        if not 1 <= i <= datum.rank:
            raise ValidationError(f"word letter s{i} is out of range 1..{datum.rank}")
        step = WeylElement(word=(i - 1,), matrix=datum.reflection_matrix(i - 1))
        w = root_data.compose(datum, w, step)
    return w


def _parse_word(text: Optional[str]) -> Tuple[int, ...]:
    if text is None or text.strip() == "":
        return ()
    out = []
    for raw in text.split(","):
        token = raw.strip()
        body = token[1:] if token[:1] in ("s", "S") else token
        try:
            out.append(int(body))
        except ValueError:
            raise ValidationError(f"--word: bad reflection token {token!r}")
    return tuple(out)


def _parabolic_from_parts(
    datum: RootDatum, label_text: str, word_text: Optional[str]
) -> ParabolicSet:
    label = _parse_type(label_text, datum, "--label")
    std = root_data.standard_parabolic(datum, label)
    word = _parse_word(word_text)
    if not word:
        return std
    w = _element_from_word(datum, word)
    return root_data.act(root_data.inverse(datum, w), std)


def _parabolic_from_json(datum: RootDatum, obj, where: str) -> ParabolicSet:
    if isinstance(obj, list):
        names = ",".join(str(x) for x in obj)
        return _parabolic_from_parts(datum, names, None)
    if isinstance(obj, dict) and "label" in obj:
        names = ",".join(str(x) for x in obj.get("label", []))
        word = obj.get("word", [])
        word_text = ",".join(str(_require_int(x, f"{where}: word")) for x in word)
        return _parabolic_from_parts(datum, names, word_text)
    raise ValidationError(f"{where}: expected a label list or a label/word object")


# ---------------------------------------------------------------------------
# report helpers


def _parabolic_id(q: ParabolicSet) -> Dict[str, List]:
    w, y = root_data.standard_position(q)
    return {
        "label": [f"a{i + 1}" for i in sorted(y)],
        "word": [i + 1 for i in w.word],
    }


def _fmt_parabolic(q: ParabolicSet) -> str:
    w, y = root_data.standard_position(q)
    base = "{" + ",".join(f"a{i + 1}" for i in sorted(y)) + "}"
    if w.word:
        base += " w=" + "".join(f"s{i + 1}" for i in w.word)
    return base


def _fmt_type(t) -> str:
    return "{" + ",".join(f"a{i + 1}" for i in sorted(t)) + "}"


def _type_names(t) -> List[str]:
    return [f"a{i + 1}" for i in sorted(t)]


def _cone_report(cone: Cone) -> Dict:
    lin, rays = polyfan.generators(cone)
    return {
        "space_dim": cone.space_dim,
        "dim": polyfan.dim(cone),
        "ineqs": [list(phi) for phi in cone.ineqs],
        "eqs": [list(phi) for phi in cone.eqs],
        "lineality_dim": len(lin),
        "rays": [[str(c) for c in r] for r in rays],
    }


def _fractions(values: Sequence) -> List[str]:
    return [str(Fraction(v)) for v in values]


def _emit(args, report: Dict, summary: List[str]) -> None:
    for line in summary:
        print(line)
    text = json.dumps(report, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"report written to {args.out}")
    else:
        print(text)


def _make_context(datum: RootDatum, t, cap: Optional[int]) -> ApartmentContext:
    return apartment.make_context(datum, t, cap=cap)


def _point_from_args(ctx: ApartmentContext, args) -> CompactApartmentPoint:
    datum = ctx.datum
    sources = [
        s
        for s in (
            getattr(args, "point_file", None),
            getattr(args, "interior", None),
            getattr(args, "stratum", None),
        )
        if s is not None
    ]
    if len(sources) != 1:
        raise ValidationError(
            "give exactly one of --point-file, --interior, --stratum"
        )
    if getattr(args, "point_file", None):
        data = _load_json(args.point_file)
        if not isinstance(data, dict):
            raise ValidationError(f"{args.point_file}: expected a JSON object")
        if "interior" in data:
            u = tuple(
                _parse_fraction(str(v), f"{args.point_file}: interior[{i}]")
                for i, v in enumerate(data["interior"])
            )
            if len(u) != datum.rank:
                raise ValidationError(
                    f"{args.point_file}: interior vector must have length {datum.rank}"
                )
            return apartment.interior_point(ctx, u)
        if "stratum" in data:
            q = _parabolic_from_json(datum, data["stratum"], args.point_file)
            residual = data.get("residual", [0] * datum.rank)
            u = tuple(
                _parse_fraction(str(v), f"{args.point_file}: residual[{i}]")
                for i, v in enumerate(residual)
            )
            if len(u) != datum.rank:
                raise ValidationError(
                    f"{args.point_file}: residual vector must have length {datum.rank}"
                )
            return apartment.stratum_point(ctx, q, u)
        raise ValidationError(f'{args.point_file}: need "interior" or "stratum"')
    if getattr(args, "interior", None) is not None:
        u = _parse_vector(args.interior, datum.rank, "--interior")
        return apartment.interior_point(ctx, u)
    q = _parabolic_from_parts(datum, args.stratum, getattr(args, "word", None))
    if getattr(args, "residual", None) is not None:
        u = _parse_vector(args.residual, datum.rank, "--residual")
    else:
        u = tuple(Fraction(0) for _ in range(datum.rank))
    return apartment.stratum_point(ctx, q, u)


def _polynomial_from_file(path: str) -> apartment.TropicalPolynomial:
    data = _load_json(path)
    if not isinstance(data, list):
        raise ValidationError(f"{path}: expected a JSON list of monomials")
    monomials = []
    for i, entry in enumerate(data):
        if not isinstance(entry, dict) or "exponents" not in entry:
            raise ValidationError(f'{path}: monomial {i} needs an "exponents" object')
        exps = {}
        for key, val in entry["exponents"].items():
            try:
                k = int(key)
            except ValueError:
                raise ValidationError(
                    f"{path}: monomial {i}: exponent key {key!r} is not an integer"
                )
            exps[k] = _require_int(val, f"{path}: monomial {i}: exponents[{key}]")
        coeff_raw = str(entry.get("log_coeff", "0")).strip()
        if coeff_raw == "-inf":
            coeff = polyfan.NEG_INF
        else:
            coeff = polyfan.finite(
                _parse_fraction(coeff_raw, f"{path}: monomial {i}: log_coeff")
            )
        character = tuple(
            _require_int(v, f"{path}: monomial {i}: character[{j}]")
            for j, v in enumerate(entry.get("character", []))
        )
        monomials.append(apartment.make_monomial(exps, coeff, character))
    return apartment.make_polynomial(monomials)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_datum_info(args) -> int:
    datum = _load_datum(args)
    elements = root_data.weyl_elements(datum, args.cap)
    report = {
        "command": "datum-info",
        "name": datum.name,
        "rank": datum.rank,
        "cartan": [list(row) for row in datum.cartan],
        "num_roots": len(datum.roots),
        "num_positive_roots": len(datum.positive_roots),
        "weyl_order": len(elements),
        "simple_roots": [f"a{i + 1}" for i in range(datum.rank)],
    }
    label = datum.name or "datum"
    _emit(
        args,
        report,
        [
            f"{label}: rank {datum.rank}, {len(datum.roots)} roots, "
            f"|W| = {len(elements)}"
        ],
    )
    return EXIT_OK


def _cmd_fan(args) -> int:
    datum = _load_datum(args)
    parabolics = root_data.all_parabolics(datum, args.cap)
    prefan = type_geometry.weyl_fan(datum, args.cap)
    cones = []
    for i, (p, c) in enumerate(zip(parabolics, prefan.cones)):
        entry = _cone_report(c)
        entry["index"] = i
        entry["parabolic"] = _parabolic_id(p)
        cones.append(entry)
    dims = {}
    for entry in cones:
        dims[entry["dim"]] = dims.get(entry["dim"], 0) + 1
    report = {
        "command": "fan",
        "datum": datum.name,
        "rank": datum.rank,
        "count": len(cones),
        "dims": {str(k): v for k, v in sorted(dims.items())},
        "cones": cones,
    }
    dim_text = ", ".join(f"dim {k}: {v}" for k, v in sorted(dims.items()))
    _emit(
        args,
        report,
        [f"Weyl fan of {datum.name or 'datum'}: {len(cones)} cones ({dim_text})"],
    )
    return EXIT_OK


def _cmd_prefan(args) -> int:
    datum = _load_datum(args)
    t = _parse_type(args.type, datum)
    ctx = _make_context(datum, t, args.cap)
    cones = []
    for i, (q, c) in enumerate(zip(ctx.parabolics, ctx.prefan.cones)):
        entry = _cone_report(c)
        entry["index"] = i
        entry["parabolic"] = _parabolic_id(q)
        cones.append(entry)
    dims = {}
    for entry in cones:
        dims[entry["dim"]] = dims.get(entry["dim"], 0) + 1
    lin = type_geometry.lineality_space(datum, t)
    report = {
        "command": "prefan",
        "datum": datum.name,
        "type": _type_names(t),
        "count": len(cones),
        "dims": {str(k): v for k, v in sorted(dims.items())},
        "lineality_dim": len(lin),
        "cones": cones,
    }
    dim_text = ", ".join(f"dim {k}: {v}" for k, v in sorted(dims.items()))
    _emit(
        args,
        report,
        [
            f"stratifying prefan of {datum.name or 'datum'} for type "
            f"{_fmt_type(t)}: {len(cones)} cones ({dim_text})"
        ],
    )
    return EXIT_OK


def _cmd_relevant(args) -> int:
    datum = _load_datum(args)
    t = _parse_type(args.type, datum)
    labels = []
    full = frozenset(range(datum.rank))
    subsets = []

    def rec(i, acc):
        if i == datum.rank:
            subsets.append(frozenset(acc))
            return
        rec(i + 1, acc)
        rec(i + 1, acc + [i])

    rec(0, [])
    for y in sorted(subsets, key=lambda s: (len(s), tuple(sorted(s)))):
        q = root_data.standard_parabolic(datum, y)
        if type_geometry.is_relevant(q, t):
            labels.append(sorted(y))
    report = {
        "command": "relevant",
        "datum": datum.name,
        "type": _type_names(t),
        "standard_relevant": [[f"a{i + 1}" for i in y] for y in labels],
        "count": len(labels),
    }
    if args.all:
        everything = [
            _parabolic_id(q)
            for q in root_data.all_parabolics(datum, args.cap)
            if type_geometry.is_relevant(q, t)
        ]
        report["all_relevant"] = everything
        report["all_count"] = len(everything)
    shown = ", ".join(
        "{" + ",".join(f"a{i + 1}" for i in y) + "}" for y in labels
    )
    summary = [
        f"standard {_fmt_type(t)}-relevant parabolics of "
        f"{datum.name or 'datum'}: {shown}"
    ]
    if args.all:
        summary.append(f"total relevant parabolics: {report['all_count']}")
    _emit(args, report, summary)
    return EXIT_OK


def _cmd_cone(args) -> int:
    datum = _load_datum(args)
    t = _parse_type(args.type, datum)
    q = _parabolic_from_parts(datum, args.label, args.word)
    if args.kind == "weyl":
        cone = type_geometry.weyl_cone(q)
        extra = {}
    elif args.kind == "max":
        cone = type_geometry.type_cone_max(q)
        extra = {}
    else:
        rep = type_geometry.relevance_report(q, t)
        cone = type_geometry.type_cone(q, t).cone
        extra = {
            "is_relevant": rep.is_relevant,
            "minimal_relevant": _parabolic_id(rep.minimal_relevant),
            "active_components": [f"a{i + 1}" for i in sorted(rep.active_components)],
            "span_equalities": [list(a) for a in rep.span_equalities],
        }
    report = {
        "command": "cone",
        "datum": datum.name,
        "kind": args.kind,
        "type": _type_names(t),
        "parabolic": _parabolic_id(q),
        "cone": _cone_report(cone),
    }
    report.update(extra)
    summary = [
        f"{args.kind} cone of {_fmt_parabolic(q)} in {datum.name or 'datum'}"
        + (f" for type {_fmt_type(t)}" if args.kind == "type" else "")
        + f": dim {polyfan.dim(cone)}, {len(cone.ineqs)} inequalities, "
        + f"{len(cone.eqs)} equalities"
    ]
    if args.kind == "type":
        yes = "yes" if extra["is_relevant"] else "no"
        summary.append(
            f"relevant: {yes}; minimal relevant stratum: "
            f"{_fmt_parabolic(type_geometry.minimal_relevant(q, t))}"
        )
    _emit(args, report, summary)
    return EXIT_OK


def _cmd_limit(args) -> int:
    datum = _load_datum(args)
    t = _parse_type(args.type, datum)
    if args.ray_file:
        data = _load_json(args.ray_file)
        if not isinstance(data, dict) or "u0" not in data or "v" not in data:
            raise ValidationError(f'{args.ray_file}: need "u0" and "v" vectors')
        u0 = tuple(
            _parse_fraction(str(x), f"{args.ray_file}: u0[{i}]")
            for i, x in enumerate(data["u0"])
        )
        v = tuple(
            _parse_fraction(str(x), f"{args.ray_file}: v[{i}]")
            for i, x in enumerate(data["v"])
        )
        if len(u0) != datum.rank or len(v) != datum.rank:
            raise ValidationError(
                f"{args.ray_file}: u0 and v must have length {datum.rank}"
            )
    else:
        if args.u0 is None or args.v is None:
            raise ValidationError("give --u0 and --v, or --ray-file")
        u0 = _parse_vector(args.u0, datum.rank, "--u0")
        v = _parse_vector(args.v, datum.rank, "--v")
    ctx = _make_context(datum, t, args.cap)
    x = apartment.limit_point(ctx, u0, v)
    coords = apartment.extract_residual(ctx, x)
    sa = apartment.stratum_apartment(ctx, x.stratum_parabolic)
    report = {
        "command": "limit",
        "datum": datum.name,
        "type": _type_names(t),
        "u0": _fractions(u0),
        "v": _fractions(v),
        "stratum": _parabolic_id(x.stratum_parabolic),
        "stratum_dim": polyfan.dim(x.point.stratum),
        "residual": _fractions(x.point.residual),
        "residual_coords": _fractions(coords),
        "residual_rank": sa.residual_datum.rank,
    }
    _emit(
        args,
        report,
        [
            f"ray limit lands on stratum {_fmt_parabolic(x.stratum_parabolic)} "
            f"(cone dim {report['stratum_dim']}); residual class "
            f"({', '.join(report['residual'])}), residual rank "
            f"{sa.residual_datum.rank}"
        ],
    )
    return EXIT_OK


def _cmd_seminorm(args) -> int:
    datum = _load_datum(args)
    t = _parse_type(args.type, datum)
    ctx = _make_context(datum, t, args.cap)
    f = _polynomial_from_file(args.poly)
    x = _point_from_args(ctx, args)
    if args.chart is not None:
        if not 0 <= args.chart < len(ctx.charts):
            raise ValidationError(
                f"--chart: index {args.chart} out of range 0..{len(ctx.charts) - 1}"
            )
        p = ctx.charts[args.chart][0]
    else:
        p, _ = apartment._accepting_chart(ctx, x)
    value = apartment.seminorm_eval(ctx, x, f, p)
    norm = apartment.is_norm(ctx, x, p)
    report = {
        "command": "seminorm",
        "datum": datum.name,
        "type": _type_names(t),
        "chart": {
            "parabolic": _parabolic_id(p),
            "generators": [list(a) for a in apartment.chart_generators(p)],
        },
        "stratum": _parabolic_id(apartment.stratum_of(ctx, x)),
        "value": str(value),
        "is_norm": norm,
        "monomials": len(f.monomials),
    }
    kind = "norm" if norm else "seminorm"
    _emit(
        args,
        report,
        [
            f"log-{kind} value of the polynomial at the point in chart "
            f"{_fmt_parabolic(p)}: {value}"
        ],
    )
    return EXIT_OK


def _cmd_stabilizer(args) -> int:
    datum = _load_datum(args)
    t = _parse_type(args.type, datum)
    ctx = _make_context(datum, t, args.cap)
    x = _point_from_args(ctx, args)
    prof = apartment.stabilizer_profile(ctx, x)
    report = {
        "command": "stabilizer",
        "datum": datum.name,
        "type": _type_names(t),
        "stratum": _parabolic_id(prof.stratum_parabolic),
        "full_unipotent": [list(a) for a in prof.full_unipotent],
        "full_levi": [list(a) for a in prof.full_levi],
        "filtered": [
            {"root": list(a), "level": str(level)} for a, level in prof.filtered
        ],
        "normalizer": prof.normalizer_note,
    }
    _emit(
        args,
        report,
        [
            f"stabilizer at stratum {_fmt_parabolic(prof.stratum_parabolic)}: "
            f"{len(prof.full_unipotent)} full unipotent roots, "
            f"{len(prof.full_levi)} full Levi roots, "
            f"{len(prof.filtered)} filtered roots, times {prof.normalizer_note}"
        ],
    )
    return EXIT_OK


def _cmd_project(args) -> int:
    datum = _load_datum(args)
    t = _parse_type(args.type, datum)
    t2 = _parse_type(args.to_type, datum, "--to-type")
    ctx = _make_context(datum, t, args.cap)
    x = _point_from_args(ctx, args)
    y = apartment.project(ctx, x, t2)
    report = {
        "command": "project",
        "datum": datum.name,
        "from_type": _type_names(t),
        "to_type": _type_names(t2),
        "from_stratum": _parabolic_id(x.stratum_parabolic),
        "stratum": _parabolic_id(y.stratum_parabolic),
        "residual": _fractions(y.point.residual),
        "stratum_dim": polyfan.dim(y.point.stratum),
    }
    _emit(
        args,
        report,
        [
            f"projection {_fmt_type(t)} -> {_fmt_type(t2)}: stratum "
            f"{_fmt_parabolic(x.stratum_parabolic)} maps to "
            f"{_fmt_parabolic(y.stratum_parabolic)}"
        ],
    )
    return EXIT_OK


def _cmd_pgl(args) -> int:
    if args.seminorm_file:
        data = _load_json(args.seminorm_file)
        if not isinstance(data, dict) or "values" not in data:
            raise ValidationError(f'{args.seminorm_file}: need a "values" list')
        raw = [str(v) for v in data["values"]]
    elif args.values is not None:
        raw = [v.strip() for v in args.values.split(",")]
    else:
        raise ValidationError("give --values or --seminorm-file")
    for i, token in enumerate(raw):
        if token != "-inf":
            _parse_fraction(token, f"values[{i}]")
    s = gl_models.make_seminorm(raw)
    ker = sorted(gl_models.kernel(s))
    x = gl_models.to_apartment_point(s)
    blocks = gl_models.stabilizer_blocks(s)
    back = gl_models.from_apartment_point(x)
    report = {
        "command": "pgl",
        "dimension": s.dimension,
        "values": [str(v) for v in s.values],
        "kernel": ker,
        "interior": not ker,
        "stratum": _parabolic_id(x.stratum_parabolic),
        "residual": _fractions(x.point.residual),
        "blocks": {
            "full_unipotent": [list(a) for a in blocks.full_unipotent],
            "full_levi": [list(a) for a in blocks.full_levi],
            "filtered": [
                {"root": list(a), "level": str(level)}
                for a, level in blocks.filtered
            ],
        },
        "round_trip_ok": back == s,
    }
    where = "interior" if not ker else f"kernel positions {ker}"
    _emit(
        args,
        report,
        [
            f"diagonal seminorm class ({', '.join(report['values'])}) on a "
            f"{s.dimension}-dimensional space: {where}, stratum "
            f"{_fmt_parabolic(x.stratum_parabolic)}"
        ],
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# SVG rendering


_PALETTE = (
    "#c6dbef",
    "#fdd0a2",
    "#c7e9c0",
    "#fcbba1",
    "#dadaeb",
    "#fff7bc",
    "#d0d1e6",
    "#e5f5e0",
    "#fde0dd",
    "#e0ecf4",
    "#f6e8c3",
    "#d9d9d9",
)


def _symmetrizer(cartan) -> Tuple[Fraction, ...]:
    """Positive rationals d with d_i c_ij = d_j c_ji, normalized to min 1
    (so short roots get squared length 2)."""
    n = len(cartan)
    d: List[Optional[Fraction]] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                    stack.append(j)
    lo = min(x for x in d if x is not None)
    return tuple(x / lo for x in d)


def _realization(datum: RootDatum):
    """Euclidean simple roots (columns of R) and the dual-point map
    M = R^{-T}, so that exact pairings match Euclidean dot products."""
    d = _symmetrizer(datum.cartan)
    g00 = 2 * float(d[0])
    g01 = float(d[0] * datum.cartan[0][1])
    g11 = 2 * float(d[1])
    a1 = (math.sqrt(g00), 0.0)
    a2x = g01 / a1[0]
    a2 = (a2x, math.sqrt(max(g11 - a2x * a2x, 0.0)))
    det = a1[0] * a2[1] - a2[0] * a1[1]
    # rows of R^{-T}, R = (a1 | a2): dual points pair with realized
    # characters by the plain Euclidean dot product
    m = (
        (a2[1] / det, -a1[1] / det),
        (-a2[0] / det, a1[0] / det),
    )

    def to_plane(u: Sequence) -> Tuple[float, float]:
        x = float(u[0]) * m[0][0] + float(u[1]) * m[0][1]
        y = float(u[0]) * m[1][0] + float(u[1]) * m[1][1]
        return (x, y)

    return to_plane


def _unit(v: Tuple[float, float]) -> Tuple[float, float]:
    n = math.hypot(v[0], v[1])
    if n == 0.0:
        raise ValidationError("degenerate direction in the rendered fan")
    return (v[0] / n, v[1] / n)


def _arc_points(
    theta_a: float, theta_b: float, theta_mid: float, radius: float
) -> List[Tuple[float, float]]:
    """Points along the circular arc from angle a to angle b passing through
    mid, sampled finely so filled sectors hug the disc."""
    tau = 2 * math.pi
    span = (theta_b - theta_a) % tau
    if span == 0.0:
        span = tau
    inside = (theta_mid - theta_a) % tau
    if inside > span + 1e-9:
        theta_a, theta_b = theta_b, theta_a
        span = tau - span
    steps = max(2, int(math.ceil(span / 0.2)))
    return [
        (
            radius * math.cos(theta_a + span * k / steps),
            radius * math.sin(theta_a + span * k / steps),
        )
        for k in range(steps + 1)
    ]


def _svg_point(cx: float, cy: float, p: Tuple[float, float]) -> str:
    return f"{cx + p[0]:.4f},{cy - p[1]:.4f}"


def _render_svg(datum: RootDatum, t, ctx: ApartmentContext) -> str:
    to_plane = _realization(datum)
    size = 480.0
    cx = cy = size / 2
    radius = 190.0
    entries = list(zip(ctx.parabolics, ctx.prefan.cones))
    legend_h = 24 + 16 * (len(entries) + 1)
    height = size + legend_h
    lines: List[str] = []
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {size:.0f} {height:.0f}">'
    )
    lines.append(f'<rect x="0" y="0" width="{size:.0f}" height="{height:.0f}" fill="#ffffff"/>')

    sectors: List[str] = []
    rays: List[str] = []
    labels: List[str] = []
    has_origin = False
    color_i = 0
    for idx, (q, cone) in enumerate(entries):
        d = polyfan.dim(cone)
        lin, ray_gens = polyfan.generators(cone)
        if d == 2:
            fill = _PALETTE[color_i % len(_PALETTE)]
            color_i += 1
            mid = polyfan.relative_interior_point(cone)
            if len(lin) == 2:
                sectors.append(
                    f'<circle cx="{cx:.4f}" cy="{cy:.4f}" r="{radius:.4f}" '
                    f'fill="{fill}" stroke="none"/>'
                )
                label_at = (0.0, 0.0)
            else:
                if len(lin) == 1:
                    a_dir = _unit(to_plane(lin[0]))
                    b_dir = (-a_dir[0], -a_dir[1])
                    mid_dir = _unit(to_plane(mid))
                else:
                    a_dir = _unit(to_plane(ray_gens[0]))
                    b_dir = _unit(to_plane(ray_gens[1]))
                    mid_dir = _unit(to_plane(mid))
                theta_a = math.atan2(a_dir[1], a_dir[0])
                theta_b = math.atan2(b_dir[1], b_dir[0])
                theta_m = math.atan2(mid_dir[1], mid_dir[0])
                pts = [(0.0, 0.0)] + _arc_points(theta_a, theta_b, theta_m, radius)
                path = " ".join(_svg_point(cx, cy, p) for p in pts)
                sectors.append(
                    f'<polygon points="{path}" fill="{fill}" stroke="none"/>'
                )
                label_at = (mid_dir[0] * radius * 0.72, mid_dir[1] * radius * 0.72)
            labels.append(
                f'<text x="{cx + label_at[0]:.4f}" y="{cy - label_at[1]:.4f}" '
                'font-family="monospace" font-size="13" text-anchor="middle" '
                f'fill="#333333">{idx}</text>'
            )
        elif d == 1:
            if lin:
                a_dir = _unit(to_plane(lin[0]))
                p1 = (a_dir[0] * radius, a_dir[1] * radius)
                p2 = (-a_dir[0] * radius, -a_dir[1] * radius)
                rays.append(
                    f'<line x1="{cx + p1[0]:.4f}" y1="{cy - p1[1]:.4f}" '
                    f'x2="{cx + p2[0]:.4f}" y2="{cy - p2[1]:.4f}" '
                    'stroke="#000000" stroke-width="2"/>'
                )
                label_dir = a_dir
            else:
                a_dir = _unit(to_plane(ray_gens[0]))
                rays.append(
                    f'<line x1="{cx:.4f}" y1="{cy:.4f}" '
                    f'x2="{cx + a_dir[0] * radius:.4f}" '
                    f'y2="{cy - a_dir[1] * radius:.4f}" '
                    'stroke="#000000" stroke-width="2"/>'
                )
                label_dir = a_dir
            labels.append(
                f'<text x="{cx + label_dir[0] * radius * 0.92 + 8:.4f}" '
                f'y="{cy - label_dir[1] * radius * 0.92 - 6:.4f}" '
                'font-family="monospace" font-size="13" '
                f'fill="#000000">{idx}</text>'
            )
        else:
            has_origin = True
            labels.append(
                f'<text x="{cx + 8:.4f}" y="{cy + 14:.4f}" '
                'font-family="monospace" font-size="13" '
                f'fill="#000000">{idx}</text>'
            )

    lines.extend(sectors)
    lines.extend(rays)
    if has_origin:
        lines.append(
            f'<circle cx="{cx:.4f}" cy="{cy:.4f}" r="4" fill="#000000"/>'
        )
    lines.extend(labels)

    title = f"{datum.name or 'datum'}, type {_fmt_type(t)}"
    lines.append(
        f'<text x="10" y="{size + 18:.0f}" font-family="monospace" '
        f'font-size="13" fill="#000000">{title}: {len(entries)} strata</text>'
    )
    for idx, (q, cone) in enumerate(entries):
        y = size + 18 + 16 * (idx + 1)
        lines.append(
            f'<text x="10" y="{y:.0f}" font-family="monospace" font-size="12" '
            f'fill="#333333">[{idx}] dim {polyfan.dim(cone)}  '
            f'{_fmt_parabolic(q)}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _cmd_render(args) -> int:
    datum = _load_datum(args)
    if datum.rank != 2:
        raise ValidationError(
            f"render needs a rank-2 root datum, got rank {datum.rank}"
        )
    t = _parse_type(args.type, datum)
    ctx = _make_context(datum, t, args.cap)
    svg = _render_svg(datum, t, ctx)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    dims = {}
    for c in ctx.prefan.cones:
        k = polyfan.dim(c)
        dims[k] = dims.get(k, 0) + 1
    dim_text = ", ".join(f"dim {k}: {v}" for k, v in sorted(dims.items()))
    print(
        f"wrote SVG for {datum.name or 'datum'} type {_fmt_type(t)} "
        f"({dim_text}) to {args.out}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# driver


def _add_datum_flags(sub) -> None:
    sub.add_argument("--datum", help="named root datum (A1-A6, B2-B4, C2-C4, D4, G2, A1xA1)")
    sub.add_argument("--datum-file", help="JSON root-datum file")
    sub.add_argument("--cap", type=int, default=None, help="Weyl enumeration cap")


def _add_point_flags(sub) -> None:
    sub.add_argument("--point-file", help="JSON point file")
    sub.add_argument("--interior", help="interior point coordinates (CSV rationals)")
    sub.add_argument("--stratum", help="stratum parabolic label, e.g. a1,a2")
    sub.add_argument("--word", help="conjugating word for --stratum, e.g. 1,2")
    sub.add_argument("--residual", help="residual coordinates (CSV rationals)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylscope",
        description=(
            "Exact combinatorics of compactified apartments: fans of Weyl "
            "cones, relevant parabolics, tropical seminorm charts, "
            "stabilizer profiles, and rank-2 SVG pictures."
        ),
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("datum-info", help="summary of a root datum")
    _add_datum_flags(p)
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_datum_info)

    p = subs.add_parser("fan", help="the fan of all Weyl cones")
    _add_datum_flags(p)
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_fan)

    p = subs.add_parser("prefan", help="the stratifying prefan of a type")
    _add_datum_flags(p)
    p.add_argument("--type", help="type as simple-root tokens, e.g. a1,a2")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_prefan)

    p = subs.add_parser("relevant", help="relevant parabolics for a type")
    _add_datum_flags(p)
    p.add_argument("--type", help="type as simple-root tokens, e.g. a1,a2")
    p.add_argument("--all", action="store_true", help="also list non-standard ones")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_relevant)

    p = subs.add_parser("cone", help="Weyl cone / chart cone / stratum cone")
    _add_datum_flags(p)
    p.add_argument("--type", help="type as simple-root tokens (for --kind type)")
    p.add_argument("--label", required=True, help="standard label, e.g. a1,a3")
    p.add_argument("--word", help="conjugating word, e.g. 1,2 for s1 s2")
    p.add_argument(
        "--kind", choices=("type", "weyl", "max"), default="type",
        help="type = stratum cone, weyl = Weyl cone, max = chart cone",
    )
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_cone)

    p = subs.add_parser("limit", help="limit of a ray in the compactification")
    _add_datum_flags(p)
    p.add_argument("--type", help="type as simple-root tokens")
    p.add_argument("--u0", help="base point (CSV rationals)")
    p.add_argument("--v", help="direction (CSV rationals)")
    p.add_argument("--ray-file", help='JSON file {"u0": [...], "v": [...]}')
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_limit)

    p = subs.add_parser("seminorm", help="evaluate a tropical polynomial at a point")
    _add_datum_flags(p)
    p.add_argument("--type", help="type as simple-root tokens")
    p.add_argument("--poly", required=True, help="JSON tropical polynomial file")
    p.add_argument("--chart", type=int, help="chart index (default: first accepting)")
    _add_point_flags(p)
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_seminorm)

    p = subs.add_parser("stabilizer", help="root-group stabilizer profile of a point")
    _add_datum_flags(p)
    p.add_argument("--type", help="type as simple-root tokens")
    _add_point_flags(p)
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_stabilizer)

    p = subs.add_parser("project", help="project a point to a coarser type")
    _add_datum_flags(p)
    p.add_argument("--type", help="source type tokens")
    p.add_argument("--to-type", required=True, help="target type tokens")
    _add_point_flags(p)
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_project)

    p = subs.add_parser("pgl", help="diagonal seminorm dictionary (type A)")
    p.add_argument("--values", help='CSV values, e.g. 0,-1,-inf')
    p.add_argument("--seminorm-file", help='JSON file {"values": [...]}')
    p.add_argument("--cap", type=int, default=None, help="Weyl enumeration cap")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_pgl)

    p = subs.add_parser("render", help="SVG picture of a rank-2 prefan")
    _add_datum_flags(p)
    p.add_argument("--type", help="type as simple-root tokens")
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENUM_CAP
    except (
        ValidationError,
        ChartMismatchError,
        IndeterminateValueError,
        FanAxiomViolation,
        DimensionCapError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
