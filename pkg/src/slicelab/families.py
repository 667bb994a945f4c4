"""Compactly supported generating families built from tensor bump terms.

F(x1, x2) = sum of c * b((x1-p)/s) * b((x2-q)/t) with the standard bump
b(u) = exp(-1/(1-u^2)) on |u| < 1 and 0 outside.  All first and second
partial derivatives are available in closed form, so level sets of dF/dx2
and the difference-function Hessian can be evaluated exactly (up to float
rounding) anywhere in the plane.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np


def _bump(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ui * ui))
    return out


def _bump_d1(u: np.ndarray) -> np.ndarray:
    """b'(u) = b(u) * (-2u / (1-u^2)^2)."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    g = 1.0 - ui * ui
    out[inside] = np.exp(-1.0 / g) * (-2.0 * ui / (g * g))
    return out


def _bump_d2(u: np.ndarray) -> np.ndarray:
    """b''(u) = b(u) * (w^2 + w'), w = -2u/(1-u^2)^2."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    g = 1.0 - ui * ui
    w = -2.0 * ui / (g * g)
    wp = -2.0 / (g * g) - 8.0 * ui * ui / (g * g * g)
    out[inside] = np.exp(-1.0 / g) * (w * w + wp)
    return out


def _bump_d3(u: np.ndarray) -> np.ndarray:
    """b'''(u) = b(u) * (w^3 + 3 w w' + w'')."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    g = 1.0 - ui * ui
    w = -2.0 * ui / (g * g)
    wp = -2.0 / (g * g) - 8.0 * ui * ui / (g * g * g)
    wpp = -24.0 * ui / (g * g * g) - 48.0 * ui * ui * ui / (g * g * g * g)
    out[inside] = np.exp(-1.0 / g) * (w * w * w + 3.0 * w * wp + wpp)
    return out


@dataclass(frozen=True)
class BumpTerm:
    c: float
    p: float
    q: float
    s: float
    t: float

    def __post_init__(self):
        if self.s <= 0 or self.t <= 0:
            raise ValueError("bump widths must be positive")


@dataclass(frozen=True)
class GeneratingFamily:
    terms: tuple[BumpTerm, ...]

    def value(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        out = np.zeros(np.broadcast(x1, x2).shape)
        for tm in self.terms:
            out += tm.c * _bump((x1 - tm.p) / tm.s) * _bump((x2 - tm.q) / tm.t)
        return out

    def partials(self, x1, x2):
        """(dF/dx1, dF/dx2), exact closed forms, zero outside the support."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        d1 = np.zeros(np.broadcast(x1, x2).shape)
        d2 = np.zeros_like(d1)
        for tm in self.terms:
            u = (x1 - tm.p) / tm.s
            v = (x2 - tm.q) / tm.t
            bu, bv = _bump(u), _bump(v)
            d1 += tm.c / tm.s * _bump_d1(u) * bv
            d2 += tm.c / tm.t * bu * _bump_d1(v)
        return d1, d2

    def second_partials(self, x1, x2):
        """(F11, F12, F22)."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        f11 = np.zeros(np.broadcast(x1, x2).shape)
        f12 = np.zeros_like(f11)
        f22 = np.zeros_like(f11)
        for tm in self.terms:
            u = (x1 - tm.p) / tm.s
            v = (x2 - tm.q) / tm.t
            bu, bv = _bump(u), _bump(v)
            bu1, bv1 = _bump_d1(u), _bump_d1(v)
            f11 += tm.c / (tm.s * tm.s) * _bump_d2(u) * bv
            f12 += tm.c / (tm.s * tm.t) * bu1 * bv1
            f22 += tm.c / (tm.t * tm.t) * bu * _bump_d2(v)
        return f11, f12, f22

    def third_partials_of_height(self, x1, x2):
        """(F112, F122, F222): the Hessian entries of dF/dx2."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        f112 = np.zeros(np.broadcast(x1, x2).shape)
        f122 = np.zeros_like(f112)
        f222 = np.zeros_like(f112)
        for tm in self.terms:
            u = (x1 - tm.p) / tm.s
            v = (x2 - tm.q) / tm.t
            f112 += tm.c / (tm.s * tm.s * tm.t) * _bump_d2(u) * _bump_d1(v)
            f122 += tm.c / (tm.s * tm.t * tm.t) * _bump_d1(u) * _bump_d2(v)
            f222 += tm.c / (tm.t * tm.t * tm.t) * _bump(u) * _bump_d3(v)
        return f112, f122, f222

    def support_bbox(self) -> tuple[float, float, float, float]:
        if not self.terms:
            return (-1.0, -1.0, 1.0, 1.0)
        x0 = min(tm.p - tm.s for tm in self.terms)
        x1 = max(tm.p + tm.s for tm in self.terms)
        y0 = min(tm.q - tm.t for tm in self.terms)
        y1 = max(tm.q + tm.t for tm in self.terms)
        return (x0, y0, x1, y1)

    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {"c": tm.c, "p": tm.p, "q": tm.q, "s": tm.s, "t": tm.t}
                for tm in self.terms
            ]
        }

    def digest(self) -> str:
        payload = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()[:16]


def family_from_json_dict(data: dict) -> GeneratingFamily:
    terms = tuple(
        BumpTerm(
            c=float(t["c"]),
            p=float(t["p"]),
            q=float(t["q"]),
            s=float(t["s"]),
            t=float(t["t"]),
        )
        for t in data.get("terms", [])
    )
    return GeneratingFamily(terms)
