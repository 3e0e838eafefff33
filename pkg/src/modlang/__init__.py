"""A small functional language with local imports and module queries.

``D -o E`` evaluates ``E`` with declarations ``D`` added to the program.
``/m`` imports every declaration of module ``m``; ``(f(c)=v)^/m`` imports
only the fact ``f(c) = w``, where ``w`` is ``f(c)`` evaluated inside ``m``.
"""

from .engine import (
    ClauseOrder,
    EngineConfig,
    EvalError,
    Failure,
    NoDerivation,
    Success,
    Trace,
    backchain,
    builtin,
    close_declarations,
    eval_di,
    evaluate,
    iter_solutions,
    match_head,
    preprocess,
    solutions,
    substitute,
)
from .parser import ParseError, parse_decl, parse_expr, parse_module_file, parse_program
from .registry import CyclicImport, HeaderMismatch, ModuleNotFound, ModuleRegistry, RegistryError
from .syntax import (
    DI,
    Bool,
    Call,
    Const,
    FunDef,
    HeadPattern,
    Import,
    Int,
    Query,
    Succ,
    Sym,
    Top,
    Var,
    pretty,
    pretty_module,
    show_value,
)
from .weaken import ResidualModule, WeakenRequest, emit, weaken_module

__version__ = "0.1.0"
