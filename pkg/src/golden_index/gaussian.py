"""Exact arithmetic in the Gaussian integers Z[i].

Everything downstream (the golden algebra, the lattices, the determinant
spectra) is built on this ring, so all operations here are exact integer
arithmetic; no floating point ever enters.
"""

from __future__ import annotations


class GaussianInteger:
    """A Gaussian integer re + im*i with plain Python int components."""

    __slots__ = ("re", "im")

    re: int
    im: int

    def __init__(self, re: int = 0, im: int = 0):
        self.re = int(re)
        self.im = int(im)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussianInteger):
            return other
        if isinstance(other, int):
            return cls(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInteger(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInteger(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInteger(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInteger(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianInteger(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conj(self) -> "GaussianInteger":
        return GaussianInteger(self.re, -self.im)

    def norm(self) -> int:
        """Absolute norm |z|^2 = re^2 + im^2, a nonnegative rational integer."""
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divides(self, other: "GaussianInteger") -> bool:
        """True iff other / self is again a Gaussian integer."""
        n = self.norm()
        if n == 0:
            return not other
        w = other * self.conj()
        return w.re % n == 0 and w.im % n == 0

    def exact_div(self, other) -> "GaussianInteger":
        """Exact quotient self / other; raises ValueError unless it divides."""
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ValueError("division by zero in Z[i]")
        w = self * o.conj()
        if w.re % n or w.im % n:
            raise ValueError(f"{other!r} does not divide {self!r} in Z[i]")
        return GaussianInteger(w.re // n, w.im // n)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianInteger(0, 0)
ONE = GaussianInteger(1, 0)
I_UNIT = GaussianInteger(0, 1)
