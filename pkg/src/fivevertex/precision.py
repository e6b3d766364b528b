"""Evaluation contexts: double precision by default, mpmath on request.

Closed-form asymptotic quantities are ordinary double-precision formulas,
but a few verification tasks (third-derivative jumps at critical points,
large-|z| resolvent expansions) sit below double roundoff.  Functions that
need this accept a ``ctx`` argument; passing ``MPContext(dps)`` swaps
``math``/``cmath`` for mpmath at the chosen working precision without a
second copy of the formulas.
"""

from __future__ import annotations

import cmath
import math

import mpmath


class DoubleContext:
    """math/cmath-backed context (the default)."""

    pi = math.pi
    mpf = staticmethod(float)
    mpc = staticmethod(complex)
    log = staticmethod(math.log)
    sqrt = staticmethod(math.sqrt)
    atan = staticmethod(math.atan)
    exp = staticmethod(math.exp)
    clog = staticmethod(cmath.log)
    csqrt = staticmethod(cmath.sqrt)

    dps = 16


class MPContext:
    """mpmath-backed context pinned to a working precision.

    Sets the global mpmath precision on use (the usual mpmath idiom);
    callers that interleave different precisions should create the
    context freshly where needed.
    """

    def __init__(self, dps: int = 50):
        self.dps = int(dps)
        mpmath.mp.dps = self.dps

    def _use(self):
        if mpmath.mp.dps != self.dps:
            mpmath.mp.dps = self.dps

    @property
    def pi(self):
        self._use()
        return mpmath.pi + 0

    def mpf(self, v):
        self._use()
        return mpmath.mpf(v)

    def mpc(self, v):
        self._use()
        return mpmath.mpc(v)

    def log(self, v):
        self._use()
        return mpmath.log(v)

    def sqrt(self, v):
        self._use()
        return mpmath.sqrt(v)

    def atan(self, v):
        self._use()
        return mpmath.atan(v)

    def exp(self, v):
        self._use()
        return mpmath.exp(v)

    # mpmath's log/sqrt already handle complex arguments
    clog = log
    csqrt = sqrt


DOUBLE = DoubleContext()


def resolve(ctx):
    """Return the default double-precision context when ``ctx`` is None."""
    return DOUBLE if ctx is None else ctx
