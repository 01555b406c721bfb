"""Human-readable polynomial text: ``x^4+38x^2+361`` and friends.

Grammar: a sum of terms ``[sign][int][*]x[^int]`` or ``[sign]int``, spaces
ignored, ``**`` accepted for ``^``.  Coefficients may repeat a power; they
are summed.  The printed form uses descending powers.
"""

import json
import re

from .errors import WeilStatError

_TERM = re.compile(r"([+-]?)(\d*)(\*?)(?:([a-z])(?:\^(\d+))?)?")


class PolyParseError(WeilStatError, ValueError):
    code = "PARSE"


def parse_poly(text, var=None) -> tuple:
    """Parse text (or a JSON list of ascending coefficients) into a tuple."""
    if isinstance(text, (list, tuple)):
        return tuple(int(c) for c in text)
    s = text.strip()
    if s.startswith("["):
        try:
            return tuple(int(c) for c in json.loads(s))
        except (ValueError, TypeError) as exc:
            raise PolyParseError(f"bad coefficient list {text!r}") from exc
    s = s.replace(" ", "").replace("**", "^")
    if not s:
        raise PolyParseError("empty polynomial text")
    coeffs: dict[int, int] = {}
    pos = 0
    seen_var = var
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"cannot parse {text!r} at position {pos}")
        sign, digits, star, v, exp = m.groups()
        if pos > 0 and not sign:
            raise PolyParseError(f"missing operator in {text!r} at position {pos}")
        if not digits and not v:
            raise PolyParseError(f"dangling sign in {text!r}")
        if star and not (digits and v):
            raise PolyParseError(f"misplaced '*' in {text!r}")
        if v:
            if seen_var is None:
                seen_var = v
            elif v != seen_var:
                raise PolyParseError(f"mixed variables in {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = (int(exp) if exp else 1) if v else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    deg = max(coeffs)
    out = [coeffs.get(i, 0) for i in range(deg + 1)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def format_poly(coeffs, var="x") -> str:
    """Canonical descending-power text for ascending coefficients."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += sign + body
    return out
