"""Built-in example varieties.

Each entry is variety-file text, printable via the `example` command and
consumable by every other command.  Scroll entries are generated on
demand from names of the form scroll-d0-d1-...-de.
"""

from __future__ import annotations

import re

from .errors import DomainError

_TOGLIATTI = """\
# Toric del Pezzo surface in P^5 whose second osculating spaces are
# hyperplanes: osculating dimensions (0, 2, 4, 5).
kind: parameterization
label: togliatti
params: x y
coords: 1, x, y, x*y^2, x^2*y, x^2*y^2
point: 1,1
"""

_SHIFRIN = """\
# Surface in P^5 satisfying the heat equation D_yy f = D_x f (divided
# second derivative); s(2) = 4 and every second fundamental form is a
# pencil with the base point (0:1).
kind: parameterization
label: shifrin
params: x y
coords: 1, x + y^2, y, y^3 + 3*x*y, y^4 + 6*x*y^2 + 3*x^2, y^5 + 10*x*y^3 + 15*x^2*y
point: 0,0
"""

# Sign-twisted intersection of three diagonal quadrics sum mu_i b_i^j X_i^2
# with b = (1,2,3,4,6,9) and mu = (-1,1,1,1,-1,1).  The all-plus version has
# no rational points (the j = 0 quadric is a sum of squares); this twist is
# projectively equivalent over the algebraic closure and carries the
# recorded rational point.
_DYE = """\
# Non-rational surface in P^5 with s(2) = 4 whose second fundamental
# forms are pencils without base points.
kind: implicit
label: dye
vars: X0 X1 X2 X3 X4 X5
equations: -X0^2 + X1^2 + X2^2 + X3^2 - X4^2 + X5^2
equations: -X0^2 + 2*X1^2 + 3*X2^2 + 4*X3^2 - 6*X4^2 + 9*X5^2
equations: -X0^2 + 4*X1^2 + 9*X2^2 + 16*X3^2 - 36*X4^2 + 81*X5^2
point: 1,0,0,2,2,1
"""

_TOGLIATTI_IMPLICIT = """\
# The togliatti surface by homogenized local equations; jet
# parameterization at the point recovers the polynomial coordinates.
kind: implicit
label: togliatti-implicit
vars: X0 X1 X2 X3 X4 X5
equations: X0^2*X3 - X1*X2^2, X0^2*X4 - X1^2*X2, X0^3*X5 - X1^2*X2^2
point: 1,0,0,0,0,0
"""

_STATIC = {
    "togliatti": _TOGLIATTI,
    "shifrin": _SHIFRIN,
    "dye": _DYE,
    "togliatti-implicit": _TOGLIATTI_IMPLICIT,
}

_SCROLL_NAME = re.compile(r"scroll-(\d+(?:-\d+)*)\Z")

_STANDARD_SCROLLS = ("scroll-2-2", "scroll-2-4", "scroll-3-3", "scroll-3-3-3")


def example_names() -> list[str]:
    """Names accepted by example_text; any scroll-d0-...-de also works."""
    return sorted(_STATIC) + list(_STANDARD_SCROLLS)


def example_text(name: str) -> str:
    if name in _STATIC:
        return _STATIC[name]
    match = _SCROLL_NAME.match(name)
    if match:
        degrees = [int(part) for part in match.group(1).split("-")]
        if any(d < 1 for d in degrees):
            raise DomainError(f"scroll degrees must be positive in {name!r}")
        return (f"# Rational normal scroll of splitting type {tuple(degrees)}.\n"
                f"kind: scroll\nlabel: {name}\n"
                "degrees: " + ",".join(str(d) for d in degrees) + "\n")
    known = ", ".join(example_names())
    raise DomainError(f"unknown example {name!r}; available: {known}")
