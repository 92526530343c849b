"""Search, generators and executable checks."""

from .checks import (
    check_cut_rule,
    check_lemma2,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    check_lemma6,
    check_nonconfluence,
    check_subject_reduction,
    check_subst_lemmas,
    check_thm1,
    check_thm2,
    check_thm4,
    check_thm5,
)
from .gen import GenConfig, GenerationExhausted, gen
from .report import CheckReport
from .search import linear_convertible, reachable, replay
