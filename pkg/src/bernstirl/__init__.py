from bernstirl.bernoulli import (
    bernoulli2nd,
    bernoulli_baseline,
    bernoulli_closed,
    bernoulli_det,
    bernoulli_rec,
    eta_neg,
    generalized_bernoulli,
    zeta_neg,
)
from bernstirl.exact_core import Rational, format_rational, parse_rational
from bernstirl.expansions import coeff, oracle_coeff
from bernstirl.identities import audit, check
from bernstirl.stirling import stirling1, stirling2

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "stirling1",
    "stirling2",
    "bernoulli_baseline",
    "bernoulli_det",
    "bernoulli_rec",
    "bernoulli_closed",
    "generalized_bernoulli",
    "bernoulli2nd",
    "zeta_neg",
    "eta_neg",
    "coeff",
    "oracle_coeff",
    "check",
    "audit",
]
