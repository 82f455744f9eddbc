"""Learning Boolean halfspaces with small nonnegative weights from membership queries."""
from .assignment import Assignment, hamming_ball
from .automaton import (AND, IDENTITY, OR, XOR, Combiner, LayeredAutomaton, accepts, build,
                        count_accepting, equivalent, find_accepting, find_difference)
from .errors import InvariantViolation, PreconditionError, RoundLimitExceeded
from .halfspace import Halfspace, canonicalize, evaluate
from .learner import (LearnResult, analyze_round1, distinguishing_set, enumerate_candidates,
                      learn_adaptive, learn_nonadaptive, nonadaptive_queries, round1_queries,
                      select_consistent, specifying_set_check, staircase_set)
from .oracle import QueryTranscript, SimulatedOracle, new_simulated

__version__ = "0.1.0"
