"""JSON and text rendering of family records.

Every exact number is a decimal string ("191", "12/13") so values of any
size survive a round trip. Floating-point renderings live only under
"approx" and are never read back.
"""

import json
import math
from fractions import Fraction
from importlib import resources

import gmpy2

from .families import FamilyRecord
from .hypersurface import WeightedHypersurface

SCHEMA_VERSION = "1.0"

_LETTER = {"small-volume": "X", "esser-mld": "V", "pair-mld": "X",
           "index1-cover": "W", "large-index": "V'"}


def int_text(x):
    # gmpy2 is not bound by CPython's int-to-str digit limit
    return str(gmpy2.mpz(x))


def exact_text(x):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int_text(x.numerator)
        return f"{int_text(x.numerator)}/{int_text(x.denominator)}"
    return int_text(x)


def parse_exact(text):
    """Inverse of :func:`exact_text`: an int, or a Fraction when there is a slash."""
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(gmpy2.mpz(num)), int(gmpy2.mpz(den)))
    return int(gmpy2.mpz(text))


def approx_text(x, digits=2):
    """Scientific rendering like '2.2e-3', computed from leading bits so huge values work."""
    x = Fraction(x)
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    num, den = abs(x.numerator), x.denominator
    shift_n = max(num.bit_length() - 64, 0)
    shift_d = max(den.bit_length() - 64, 0)
    mant = (num >> shift_n) / (den >> shift_d)
    log10 = math.log10(mant) + (shift_n - shift_d) * math.log10(2)
    exp = math.floor(log10)
    lead = 10 ** (log10 - exp)
    if round(lead, digits - 1) >= 10:
        lead, exp = lead / 10, exp + 1
    return f"{sign}{lead:.{digits - 1}f}e{exp}"


def render(record):
    """ExampleDocument dict for a FamilyRecord."""
    doc = {"schema_version": SCHEMA_VERSION, "family": record.family,
           "dimension": str(record.n)}
    h = record.hypersurface
    if h is not None:
        doc["weights"] = [int_text(a) for a in h.weights]
        doc["degree"] = int_text(h.degree)
        doc["monomials"] = [[int_text(e) for e in m] for m in h.monomials]
    if record.boundary is not None:
        var, coeff = record.boundary
        doc["boundary"] = {"variable": str(var), "coefficient": exact_text(coeff)}
    if record.coefficients is not None:
        doc["coefficients"] = [exact_text(c) for c in record.coefficients]
    doc["invariants"] = {k: exact_text(v) for k, v in record.invariants.items()}
    if record.action_weights is not None:
        doc["action_weights"] = [int_text(a) for a in record.action_weights]
    doc["flags"] = dict(record.flags)
    approx = {k: approx_text(v) for k, v in record.invariants.items()
              if isinstance(v, Fraction) and v.denominator != 1}
    if record.boundary is not None:
        approx["boundary_coefficient"] = approx_text(record.boundary[1])
    doc["approx"] = approx
    return doc


def parse(doc):
    """Rebuild the FamilyRecord from a document; the 'approx' block is ignored."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    h = None
    if "weights" in doc:
        h = WeightedHypersurface(
            weights=tuple(int(a) for a in doc["weights"]),
            degree=int(doc["degree"]),
            monomials=tuple(tuple(int(e) for e in m) for m in doc["monomials"]))
    boundary = None
    if "boundary" in doc:
        b = doc["boundary"]
        boundary = (int(b["variable"]), Fraction(parse_exact(b["coefficient"])))
    coefficients = None
    if "coefficients" in doc:
        coefficients = tuple(Fraction(parse_exact(c)) for c in doc["coefficients"])
    action = None
    if "action_weights" in doc:
        action = tuple(int(a) for a in doc["action_weights"])
    return FamilyRecord(
        family=doc["family"], n=int(doc["dimension"]), hypersurface=h, boundary=boundary,
        invariants={k: parse_exact(v) for k, v in doc["invariants"].items()},
        action_weights=action, coefficients=coefficients, flags=dict(doc.get("flags", {})))


def to_json(record):
    return json.dumps(render(record), indent=2) + "\n"


def schema():
    text = resources.files("excy").joinpath("schemas/example_document.schema.json").read_text()
    return json.loads(text)


def _monomial_text(mono):
    parts = []
    for j, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{j}")
        elif e:
            parts.append(f"x{j}^{int_text(e)}")
    return " ".join(parts)


def to_text(record):
    """Aligned plain-text summary, e.g. 'V_191 ⊂ P(95,61,26,8,1)'."""
    lines = [f"{record.family}, dimension {record.n}"]
    h = record.hypersurface
    if h is not None:
        letter = _LETTER.get(record.family, "X")
        lines.append(f"{letter}_{int_text(h.degree)} ⊂ P({','.join(int_text(a) for a in h.weights)})")
        lines.append("equation: " + " + ".join(_monomial_text(m) for m in h.monomials))
    if record.boundary is not None:
        var, coeff = record.boundary
        lines.append(f"boundary: {exact_text(coeff)} * (x{var} = 0)")
    if record.coefficients is not None:
        lines.append("P^%d with coefficients %s on H_0..H_%d" % (
            record.n, ", ".join(exact_text(c) for c in record.coefficients), record.n + 1))
    rows = [(k, exact_text(v)) for k, v in record.invariants.items()]
    rows += [(k, str(v)) for k, v in record.flags.items()]
    if record.action_weights is not None:
        rows.append(("action_weights", "(" + ",".join(int_text(a) for a in record.action_weights) + ")"))
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        extra = ""
        val = record.invariants.get(k)
        if isinstance(val, Fraction) and val.denominator != 1:
            extra = f"  (~{approx_text(val)})"
        lines.append(f"  {k.ljust(width)}  {v}{extra}")
    return "\n".join(lines) + "\n"
