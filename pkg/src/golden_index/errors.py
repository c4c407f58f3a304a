"""Exception types raised by the public API."""


class GoldenIndexError(Exception):
    """Base class for all library errors."""


class NotLemmaOneForm(GoldenIndexError):
    """A partition generator has a nonzero golden-ratio component.

    Partition generators must look like alpha + beta*e with plain Gaussian
    integer alpha, beta; only then do the two-sided ideal and the principal
    left ideal of the order coincide.
    """


class NotCoprime(GoldenIndexError):
    """Two partition generators share a nontrivial common divisor."""


class ZeroDivisor(GoldenIndexError):
    """A partition generator has reduced norm zero."""


class NotSublattice(GoldenIndexError):
    """The shaping lattice is not contained in the given lattice."""


class IndexOutOfRange(GoldenIndexError):
    """A message index lies outside {0, ..., W_k - 1}."""


class DegenerateSet(GoldenIndexError):
    """Determinant spectrum requested for a set with fewer than 2 codewords."""


class OutOfRange(GoldenIndexError):
    """A CER curve does not bracket the requested target rate."""


class ConfigError(GoldenIndexError):
    """A run configuration file failed to parse or validate."""
