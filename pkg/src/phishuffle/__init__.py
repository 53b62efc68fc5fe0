"""Exact shuffle, stuffle and phi-deformed stuffle Hopf algebras on free monoids."""
from .scalars import DUAL, EPS, QQ, DualNumber, Ring, RingTag
from .words import Alphabet, lyndon_factorization, lyndon_up_to, standard_factorization
from .freealg import Poly, TensorPoly2, TensorPoly3, conc, counit, format_poly, pairing, parse_poly
from .philaw import PhiLaw, builtin
from .products import (Coproduct, delta_conc, delta_phi, delta_q, delta_shuffle, infiltration,
                       phi_coproduct, q_coproduct, shuffle, shuffle_coproduct, stuffle_phi)
from .bases import dual_s, pbw_p
from .convolution import GradedEndo, NotSummableWithinBound, antipode_qft, antipode_series, conv, pi1
from .report import Report

__version__ = "0.1.0"
