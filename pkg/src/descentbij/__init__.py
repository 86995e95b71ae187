"""Descent-set-preserving bijections between pattern-avoiding permutation classes.

The library provides three layers:

* permutation statistics (descents, ascents, major index, inversions,
  ascending-run blocks, ranks);
* pattern machinery: classical containment, the special predicates H(k) and
  Q(k), and lexicographic generation of avoidance classes;
* the bijections themselves: the rank-refill pair ``f_map``/``g_map``, the
  rewrite closures ``phi_map``/``psi_map`` with their step/selection
  primitives, and the compositions ``theta_g_to_f``/``theta_f_to_g`` linking
  the G(k)- and F(k)-avoiders while preserving descent sets.

An exhaustive verification harness lives in :mod:`descentbij.verify` and is
exposed on the command line as ``descentbij verify``.
"""
from .equivalence import (
    CountTable,
    descent_key,
    distribution,
    dt_counts,
    dt_descent_set,
    render_descent_key,
    tally,
    theta_f_to_g,
    theta_g_to_f,
)
from .errors import (
    BadParameter,
    EmptyInput,
    HypothesisViolation,
    InputContainsPattern,
    InternalExhaustion,
    MalformedToken,
    NonTermination,
    ParseError,
    RepeatedValue,
    SelectionMismatch,
    ValueOutOfRange,
)
from .patterns import (
    F,
    G,
    J,
    PatternSpec,
    avoiders,
    avoids,
    classical,
    contains,
    contains_H,
    contains_Q,
    contains_classical,
    has_H,
    has_Q,
    is_H_occurrence,
    is_Q_occurrence,
    is_classical_occurrence,
    parse_spec,
    special_h,
    special_q,
)
from .permutation import (
    Perm,
    as_permutation,
    ascent_set,
    blocks,
    descent_set,
    inversion_number,
    major_index,
    parse,
    ranks,
    to_text,
)
from .slidemap import (
    PhiSelection,
    PsiSelection,
    phi_map,
    phi_select,
    phi_step,
    psi_map,
    psi_select,
    psi_step,
)
from .verify import VerifyReport, run_suite
from .westmap import RefillPlan, f_map, g_map, refill_plan

__all__ = [name for name in dir() if not name.startswith("_")]
