"""Registry of results deliberately outside this package's verified scope.

Every claim the library makes is backed by a check suite or an acceptance
test; this module records the ones it deliberately does *not* make, so the
boundary is machine-readable rather than folklore.  Tests assert the
registry entries exist, and the README points here.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Exclusion", "EXCLUSIONS", "is_excluded"]


@dataclass(frozen=True)
class Exclusion:
    """A named result that no check suite or acceptance test claims."""

    name: str
    summary: str
    reason: str


EXCLUSIONS: tuple = (
    Exclusion(
        name="sp2-case-a-eigenbasis-reduction",
        summary=(
            "Reduction of the Case A generators onto continuum "
            "special-function eigenbases (Whittaker-type eigenfunctions "
            "in polar phase-space coordinates)."
        ),
        reason=(
            "Requires continuum spectral theory for unbounded operators "
            "and non-polynomial eigenfunctions, outside both the exact "
            "polynomial layer and the finite-grid numerics provided here. "
            "The Case A generators, commutation relations, and Casimir "
            "are fully verified; the eigenbasis correspondence is not "
            "claimed by any suite."
        ),
    ),
)


def is_excluded(name: str) -> bool:
    """True if ``name`` is a registered out-of-scope result."""
    return any(entry.name == name for entry in EXCLUSIONS)
