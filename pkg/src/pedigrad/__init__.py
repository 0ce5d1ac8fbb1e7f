"""Pedigrads over preordered color sets: segments, chromologies, words,
idempotent-semimodule recombination, and crossover measures."""

from .errors import (
    CapExceeded,
    ParseError,
    PedigradError,
    UniverseTooLarge,
    ValidationError,
)
from .preorder import (
    BOOL,
    Preorder,
    bool_preorder,
    make_preorder,
    pair_color,
    parse_preorder,
    product,
)
from .segment import (
    AUTO,
    SegMorphism,
    Segment,
    compose,
    empty_segment,
    enumerate_morphisms,
    identity_morphism,
    invert_morphism,
    invert_segment,
    leq_quasi_homologous,
    make_segment,
    parse_segment,
    print_segment,
    truncate,
    validate_morphism,
)
from .alphabet import (
    Alphabet,
    DNA,
    RNA,
    parse_alphabet,
    product_alphabet,
)
from .chromology import (
    Chromology,
    ChromologyDoc,
    Cone,
    ConeClass,
    classify_cone,
    invert_chromology,
    is_finite_wide,
    is_inversible,
    make_cone,
    parse_chromology,
)
from .words import (
    Word,
    concat_along_cone,
    crispr_edit,
    make_word,
    map_word,
    mutation_span,
    pointwise_nat_trans,
    print_word,
    restrict_to_leg,
    reverse_word,
    transcribe,
    word_from_literal,
    word_universe,
    zip_words,
)
from .boolmod import (
    BoolSum,
    ConeImage,
    WordUniverse,
    add,
    beta,
    bottom,
    congruence_class,
    congruent_single,
    leq_support,
    make_sum,
    parse_sum,
    pi,
    print_sum,
    zero,
)
from .recomb import (
    RecombContext,
    SchemeReport,
    apply_mutation_rules,
    check_irreducible,
    check_scheme,
    dx_map,
    equivalent,
    factor_through,
    oracle_congruence,
    parse_mutation_rules,
    parse_relations,
    saturate,
    verify_wmon,
)
from .linkage import (
    CrossoverModel,
    EventSpace,
    crossover_count,
    event_space_from_class,
    exact_odd_mass,
    exact_odd_mass_explicit,
    format_mapfun_tsv,
    haldane_measure,
    interference_cones,
    mapfun_table,
    poisson_limit,
    poisson_odd_series,
    recombinant_sum,
)

__version__ = "1.0.0"
