"""Exception types shared across the package."""

from __future__ import annotations


class LatzetaError(Exception):
    """Base class for all package errors."""


class PoleProximity(LatzetaError):
    """Evaluation requested inside the guard disk of a pole."""


class SingularBasis(LatzetaError):
    """Lattice constructor received linearly dependent generators."""


class EnumerationOverflow(LatzetaError):
    """A vector enumeration exceeded the configured budget."""


class NonConvergence(LatzetaError):
    """An iteration failed to reach its fixed point within budget."""


class ConvergenceRegion(LatzetaError):
    """Series parameters outside the region of absolute convergence."""


class QuadratureBudget(LatzetaError):
    """Adaptive quadrature failed to stabilize within the depth budget."""


class ContourFailure(LatzetaError):
    """A contour node evaluation failed inside residue extraction."""


class InvalidFlag(LatzetaError):
    """A filtration step is not a primitive (saturated) sublattice."""


class NoDecomposition(LatzetaError):
    """No multiset of library bundles matches the given bundle data."""


class AmbiguousDecomposition(LatzetaError):
    """More than one multiset of library bundles matches; not resolved."""


class ConfigParseError(LatzetaError):
    """Malformed configuration file; message names the offending line."""
