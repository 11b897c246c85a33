"""Model serialization and report emission.

Models travel as JSON documents: base algebra (basis, structure constants,
differential), bundle data (fiber dimension, Euler representative), twist
data and an optional Euler scaling.  Rationals are serialized as "p/q"
strings so nothing is lost; emission is canonical, so parse o emit is the
identity on canonical files.

Parse failures (malformed documents) and validation failures (well-formed
documents describing broken models) are distinct exception types mapped to
distinct CLI exit codes.
"""

import json
from fractions import Fraction

from .algebra import GradedAlgebra, algebra_check, as_fraction, koszul_sign
from .bundles import SphereBundle, Twist, ValidationError

FORMAT_TAG = "sphere-tduality-model/1"


class ParseError(ValueError):
    """The document is malformed (bad JSON, missing or mistyped fields)."""


def _fraction(text, where):
    try:
        return as_fraction(text if isinstance(text, str) else int(text))
    except (ValueError, TypeError, ZeroDivisionError):
        raise ParseError(f"{where}: not an exact rational: {text!r}") from None


def _element_dict(doc, algebra, where):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object of name -> rational")
    coeffs = {}
    for name, value in doc.items():
        if name not in algebra.index:
            raise ParseError(f"{where}: unknown basis name {name!r}")
        coeffs[name] = _fraction(value, f"{where}.{name}")
    return algebra.element(coeffs)


def _require(doc, key, types, where):
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, types):
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return value


def parse_algebra(doc, where="base"):
    basis = _require(doc, "basis", list, where)
    names = []
    degrees = []
    for pos, entry in enumerate(basis):
        if not isinstance(entry, dict):
            raise ParseError(f"{where}.basis[{pos}]: expected an object")
        names.append(_require(entry, "name", str, f"{where}.basis[{pos}]"))
        degrees.append(_require(entry, "degree", int, f"{where}.basis[{pos}]"))
    if len(set(names)) != len(names):
        raise ParseError(f"{where}.basis: duplicate names")
    index = {n: i for i, n in enumerate(names)}

    unit_name = _require(doc, "unit", str, where)
    if unit_name not in index:
        raise ParseError(f"{where}.unit: unknown basis name {unit_name!r}")
    unit = index[unit_name]

    mult_doc = _require(doc, "mult", list, where)
    mult = {}
    for pos, entry in enumerate(mult_doc):
        here = f"{where}.mult[{pos}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{here}: expected an object")
        ln = _require(entry, "left", str, here)
        rn = _require(entry, "right", str, here)
        if ln not in index or rn not in index:
            raise ParseError(f"{here}: unknown basis name")
        i, j = index[ln], index[rn]
        if i == unit or j == unit:
            raise ParseError(f"{here}: unit products are implied, do not list them")
        if i > j:
            raise ParseError(f"{here}: entries must be listed with left index <= right")
        if (i, j) in mult:
            raise ParseError(f"{here}: duplicate entry for ({ln}, {rn})")
        value = _require(entry, "value", dict, here)
        vec = {}
        for k_name, c in value.items():
            if k_name not in index:
                raise ParseError(f"{here}.value: unknown basis name {k_name!r}")
            vec[index[k_name]] = _fraction(c, f"{here}.value.{k_name}")
        mult[(i, j)] = vec

    # fill the implied entries: unit row/column and the Koszul mirror
    full = {}
    for i in range(len(names)):
        full[(unit, i)] = {i: Fraction(1)}
        if i != unit:
            full[(i, unit)] = {i: Fraction(1)}
    for (i, j), vec in mult.items():
        full[(i, j)] = dict(vec)
        if i != j:
            sgn = koszul_sign(degrees[i], degrees[j])
            full[(j, i)] = {k: sgn * c for k, c in vec.items()}

    diff_doc = doc.get("diff", {})
    if not isinstance(diff_doc, dict):
        raise ParseError(f"{where}.diff: expected an object")
    diff = {}
    for name, vec_doc in diff_doc.items():
        if name not in index:
            raise ParseError(f"{where}.diff: unknown basis name {name!r}")
        if not isinstance(vec_doc, dict):
            raise ParseError(f"{where}.diff.{name}: expected an object")
        vec = {}
        for k_name, c in vec_doc.items():
            if k_name not in index:
                raise ParseError(f"{where}.diff.{name}: unknown basis name {k_name!r}")
            vec[index[k_name]] = _fraction(c, f"{where}.diff.{name}.{k_name}")
        diff[index[name]] = vec

    try:
        algebra = GradedAlgebra(names, degrees, full, diff, unit=unit)
    except ValueError as exc:
        raise ValidationError(f"{where}: {exc}") from None
    failures = algebra_check(algebra)
    if failures:
        shown = ", ".join(
            f"{axiom}{tuple(names[i] for i in witness)}"
            for axiom, witness in failures[:8]
        )
        raise ValidationError(f"{where}: algebra axioms violated: {shown}")
    return algebra


class ParsedModel:
    def __init__(self, base, bundle=None, twist=None, lam=None):
        self.base = base
        self.bundle = bundle
        self.twist = twist
        self.lam = lam


def parse_model(source):
    """Parse and validate a model document.

    Args:
        source: a JSON string, or a path-like pointing at a file.

    Raises:
        ParseError: the document is not well-formed.
        ValidationError: the described model violates an invariant; the
            message names the field and the violated rule.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
    if not text.strip():
        raise ParseError("empty document")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("format") != FORMAT_TAG:
        raise ParseError(f"missing or unsupported format tag (want {FORMAT_TAG!r})")

    base = parse_algebra(_require(doc, "base", dict, "model"))

    bundle = None
    if "bundle" in doc:
        bdoc = _require(doc, "bundle", dict, "model")
        fiber_dim = _require(bdoc, "fiber_dim", int, "bundle")
        euler = _element_dict(bdoc.get("euler", {}), base, "bundle.euler")
        try:
            bundle = SphereBundle(base, fiber_dim, euler)
        except ValidationError as exc:
            raise ValidationError(f"bundle: {exc}") from None

    twist = None
    if "twist" in doc:
        if bundle is None:
            raise ParseError("twist: needs a bundle section")
        tdoc = _require(doc, "twist", dict, "model")
        k = _require(tdoc, "k", int, "twist")
        h0 = _element_dict(tdoc.get("base_part", {}), base, "twist.base_part")
        ehat = _element_dict(tdoc.get("fiber_part", {}), base, "twist.fiber_part")
        try:
            twist = Twist(bundle, h0, ehat, k)
        except ValidationError as exc:
            raise ValidationError(f"twist: {exc}") from None

    lam = None
    if "lambda" in doc:
        lam = _fraction(doc["lambda"], "lambda")
        if lam == 0:
            raise ValidationError("lambda: must be nonzero")

    return ParsedModel(base, bundle, twist, lam)


# -- emission ---------------------------------------------------------------


def _element_doc(x):
    alg = x.algebra
    return {alg.names[i]: str(x.coeffs[i]) for i in sorted(x.support())}


def _algebra_doc(algebra):
    A = algebra
    basis = [{"name": n, "degree": d} for n, d in zip(A.names, A.degrees)]
    mult = []
    for (i, j) in sorted(A.mult):
        if i > j or i == A.unit or j == A.unit:
            continue
        vec = A.mult[(i, j)]
        mult.append({
            "left": A.names[i],
            "right": A.names[j],
            "value": {A.names[k]: str(vec[k]) for k in sorted(vec)},
        })
    doc = {"basis": basis, "unit": A.names[A.unit], "mult": mult}
    if A.diff:
        doc["diff"] = {
            A.names[j]: {A.names[k]: str(c) for k, c in sorted(A.diff[j].items())}
            for j in sorted(A.diff)
        }
    return doc


def emit_model(base=None, bundle=None, twist=None, lam=None, parsed=None):
    """Canonical JSON for a model; parse(emit(...)) round-trips losslessly."""
    if parsed is not None:
        base, bundle, twist, lam = parsed.base, parsed.bundle, parsed.twist, parsed.lam
    if base is None and bundle is not None:
        base = bundle.base
    doc = {"format": FORMAT_TAG, "base": _algebra_doc(base)}
    if bundle is not None:
        doc["bundle"] = {
            "fiber_dim": bundle.fiber_dim,
            "euler": _element_doc(bundle.euler),
        }
    if twist is not None:
        doc["twist"] = {
            "k": twist.k,
            "base_part": _element_doc(twist.h0),
            "fiber_part": _element_doc(twist.ehat),
        }
    if lam is not None:
        doc["lambda"] = str(Fraction(lam))
    return json.dumps(doc, indent=2) + "\n"


# -- reports ----------------------------------------------------------------


def emit_report(report, fmt="json"):
    """Render a report dict as canonical JSON or a plain text table."""
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "table":
        lines = []
        _render_table(report, lines, indent=0)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def _render_table(node, lines, indent):
    pad = "  " * indent
    if isinstance(node, dict):
        for key in sorted(node):
            value = node[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                _render_table(value, lines, indent + 1)
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(node, list):
        for item in node:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                _render_table(item, lines, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(node)}")


def _scalar(value):
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, dict)) and not value:
        return "(none)"
    return str(value)


def matrix_doc(M):
    """A matrix as lists of 'p/q' strings, for embedding in reports."""
    return [[str(x) for x in row] for row in M]
