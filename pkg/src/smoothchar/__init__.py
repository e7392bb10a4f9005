"""Character sums to smooth squarefree moduli: exact complete sums, differencing
and completion steps, exponent-pair bookkeeping, factor planning and central
L-values, all checkable at desk scale."""

from .bounds_lab import (ExponentPair, FamilyConfig, apply_A, apply_B, bound_BAkB, bound_S_pair,
                         bound_S_theorem1, eval_word, fit_exponent, scan_family, smooth_family)
from .characters import (DirichletCharacter, crt_split_character, enumerate_primitive, gauss_sum,
                         primitive_count, sample_primitive, trivial_character)
from .complete_sums import (scaled_k_sum, check_k_bound, check_k_mult, check_w_bound, check_w_mult,
                            k_sum, k_sum_all, shifted_product, twist_check, w_sum, w_table)
from .errors import (BadFactor, BadWord, Degenerate, Infeasible, LengthExceedsModulus, NotCoprime,
                     NotPrimitive, NotSquarefree, OutOfRange, SmoothCharError)
from .factor_planner import (FactorizationPlan, assemble_factorization, plan_targets_ba3b,
                             plan_targets_theorem1, regroup_for_small_q0)
from .lfunc import l_half_afe, l_half_hurwitz, root_number, scan_l_family
from .reports import BoundReport
from .residue_core import SquarefreeModulus, factor_squarefree, inverse_mod, is_squarefree
from .vdc_processes import (Interval, a_process, a_process_iterated, b_process, char_sum,
                            completion_check, gcd_sum, gcd_sum_weighted, shifted_char_sum)

__version__ = "0.1.0"
