"""Renormalization towers of cyclic interval patterns and their forcing."""

from renorm_towers.permutations import (
    CyclicPermutation,
    Pattern,
    InvalidPermutation,
    InvalidBlockPeriod,
    InvalidPeriod,
    block_periods,
    tower,
    quotient,
    first_return,
    stefan,
    is_stefan,
    is_doubling,
    extension_class,
)
from renorm_towers.orders import (
    InfiniteTower,
    InconsistentTail,
    sharkovsky_ge,
    nbs_gg,
    tower_gg,
    n_set,
    tow_set,
    tail_signature,
)
from renorm_towers.plinear import (
    PLinearMap,
    CoveringGraph,
    ExactCycle,
    plinear_from_pattern,
    evaluate,
    covering_graph,
    loops,
    orbit_from_loop,
    cycles_up_to,
    forces,
    forced_towers,
    is_markov_exact,
)
from renorm_towers.kneading import (
    KneadingSequence,
    TruncatedTent,
    NotUnimodal,
    InadmissibleKneading,
    is_unimodal,
    kneading,
    star,
    kneading_parity,
    tent_cycles,
    alpha_of_cycle,
    alpha,
    kneading_to_pattern,
    b_min,
    a_min,
    truncated_cycles,
    realize,
    beta_approx,
)

__version__ = "0.1.0"
