"""Exact combinatorics of affine Deligne-Lusztig varieties X_x(b) for basic b.

Two independent decisions of nonemptiness are provided: the alcove criterion
(:func:`nonempty_basic_criterion`, :func:`shrunken_criterion`) and
Deligne-Lusztig reduction (:func:`reduction_nonempty`).
"""

from .abelian import FinAbGroup, delta_coinvariants, smith_normal_form, smith_quotient
from .afweyl import (
    AffineElement,
    ClassInvariants,
    Frobenius,
    apply_delta,
    compose,
    elements_up_to,
    eta,
    identity,
    invert,
    is_basic,
    k_index,
    kappa,
    length,
    newton,
    omega_elements,
    sigma_invariants,
    simple_affine_reflections,
    translation,
)
from .alcoves import (
    AlcoveWitness,
    alcove_witnesses,
    inner_form_transport,
    is_alcove,
    is_shrunken,
    nlo_check,
    nonempty_basic_criterion,
    shrunken_criterion,
)
from .errors import AdlvError
from .expr import format_element, parse_element
from .reduction import (
    Reducer,
    class_inventory,
    conj_step,
    crosscheck,
    descend_to_minimal,
    is_minimal,
    reduction_nonempty,
)
from .render import render_svg
from .rootdata import GroupSpec, RootDatum, build_root_datum, delta_stable_subsets, dominant_representative

__version__ = "0.1.0"
