"""Free-group word combinatorics and certificates of non-simplicity.

The package decides and certifies when an element of a finitely generated
free group is a test element for monomorphisms (equivalently, lies in no
proper free factor), through three cooperating layers:

* exact word arithmetic and Whitehead graphs (``words``, ``whgraph``);
* Whitehead automorphisms, length minimization and an orbit-search oracle
  for simplicity (``autos``);
* axes in the Cayley tree, exact axis overlaps, and the certification
  rules built on them (``axes``, ``certify``).

See the ``demos/`` directory of the repository for narrative walkthroughs
and the ``fgcert`` command line for the scriptable surface.
"""

from .words import (
    CyclicWord,
    Letter,
    ParseError,
    Word,
    abelianize,
    commutator,
    concat,
    conjugate,
    contains_cyclic_subword,
    cyclic_bigrams,
    cyclic_reduce,
    format_word,
    in_commutator_subgroup,
    in_square_times_commutator,
    invert,
    parse_word,
    power,
    reduce,
)
from .whgraph import (
    WhiteheadGraph,
    build,
    cut_vertices,
    has_cut_vertex,
    is_connected,
    is_subgraph,
    to_dot,
    to_json_dict,
    vertex_name,
)
from .autos import (
    DEFAULT_ORBIT_BUDGET,
    GeneratorMap,
    Multiplier,
    OrbitBudgetExceeded,
    Relabeling,
    WhiteheadAutomorphism,
    abelian_matrix,
    apply_endo,
    compose_maps,
    cyclic_length_change,
    enumerate_whitehead_autos,
    format_generator_map,
    identity_map,
    is_possibly_automorphism,
    is_simple,
    is_test_element_for_monos,
    is_whitehead_minimal,
    multiplier_moves,
    parse_generator_map,
    whitehead_minimize,
)
from .axes import (
    INFINITE,
    Axis,
    AxisOverlap,
    OverlapWindowExhausted,
    SubgraphWitnessNotFound,
    axis,
    axis_vertex,
    find_k,
    on_axis,
    overlap,
    primitive_root,
    same_line,
)
from .certify import (
    Certificate,
    Rule,
    Verdict,
    builtin_pivots,
    builtin_words,
    certificate_json_dict,
    certify_auto,
    certify_commutator_subword,
    certify_squares_subword,
    certify_via_oracle,
    certify_via_theorem,
    commutators_test_word,
    commutators_word,
    power_word,
    squares_test_word,
    squares_word,
    verify_builtin_minimality,
    verify_endo_fixed_test_words,
)

__version__ = "0.1.0"
