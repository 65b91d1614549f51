"""Exact TSP relaxation pipelines: fractional and graphical 2-matchings,
the subtour LP, and the 2-matching-with-optional-vertices route.

All rational values cross the boundary as :class:`fractions.Fraction`.
Costs may be passed as ints, Fractions or strings such as ``"10/9"``.
"""

from ._core import (
    Instance,
    InvariantError,
    ParseError,
    PreconditionError,
    ValidationError,
    boyd_carr,
    cli,
    g2m_43,
    g2m_109,
    optimal_two_matching,
    run_report,
    solve_f2m,
    solve_subtour,
    worst_case_family,
)

__all__ = [
    "Instance",
    "InvariantError",
    "ParseError",
    "PreconditionError",
    "ValidationError",
    "boyd_carr",
    "cli",
    "g2m_43",
    "g2m_109",
    "optimal_two_matching",
    "run_report",
    "solve_f2m",
    "solve_subtour",
    "worst_case_family",
]
