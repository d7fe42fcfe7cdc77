"""Multi-task inductive synthesis of definite logic programs.

Candidate programs are generated in increasing size order under a language
bias, tested against examples by a bounded closed-world evaluator, and every
failure is turned into constraints that prune the rest of the search. Six
scheduling strategies share the loop and differ in how the search size moves
across tasks and what survives a background-knowledge update.
"""

from .constraints import (
    Constraint,
    ConstraintStore,
    Kind,
    StoreEvent,
    derive_constraints,
    preserve_across_update,
    violates,
)
from .engine import (
    DEFAULT_LIMITS,
    EvalLimits,
    EvalResult,
    ExampleSet,
    Outcome,
    RuleDb,
    entails,
    test_hypothesis,
)
from .learn import LearnResult, Task, learn, learn_at_size
from .schedule import (
    STRATEGIES,
    MultiTaskProblem,
    MultiTaskResult,
    RunTrace,
    SolutionRecord,
    StrategyConfig,
    augment_bk,
    run_id,
    run_naive,
    run_prio,
    run_reset_bfs,
    run_reset_id,
    run_strategy,
    shuffled_problem,
)
from .space import (
    LanguageBias,
    count_hypotheses,
    enumerate_hypotheses,
    format_bias,
    hs_upper_bound,
    parse_bias,
)
from .subsume import is_generalisation, is_separable, is_specialisation, theta_subsumes
from .terms import (
    Atom,
    Clause,
    Const,
    Program,
    Struct,
    Var,
    canonicalize,
    clause_key,
    make_program,
    program_key,
    unify,
)

__version__ = "0.1.0"
