"""Exact counting of balanced binary words by slope and intercept."""
from .counting import (CountTable, Threshold, count_A_fast_u1, count_A_naive,
                       count_B_classic, count_B_fast, count_B_theorem, floor_sum, scan)
from .exceptions import DomainError, ResourceLimitError
from .farey import (FareySequence, farey_sequence, frac_part, mertens, mobius_sieve,
                    totient_sieve, totient_summatory)
from .geometry import (ConstraintSystem, LinearConstraint, ParamRegion, count_B_oracle,
                       count_B_rectangle, feasible, parameter_system, partition_svg)
from .words import (MechanicalParams, coding, enumerate_balanced, is_balanced,
                    lower_mechanical_prefix, upper_mechanical_prefix)

__version__ = "0.1.0"
