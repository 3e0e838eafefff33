"""Reference implementations the engine is checked against.

``DerivationSearch`` enumerates derivations straight from the inference
rules: programs are binary conjunction trees searched by rules 2 and 3,
substitution is done by its own code, and every judgment is a Python
generator that yields one value per derivation.  It shares nothing with
``modlang.engine`` except the AST classes.
"""

from __future__ import annotations

from modlang.syntax import DI, Bool, Call, Const, FunDef, HeadPattern, Import, Int, Query, Succ, Sym, Top, Var


def fib_iter(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class OracleError(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


AND = "&"


def conj(decls):
    """Left-nested conjunction tree, so extending D with D1 is ``(AND, D, D1)``."""
    tree = None
    for d in decls:
        tree = d if tree is None else (AND, tree, d)
    return tree


def extend(d, d1):
    if d is None:
        return d1
    if d1 is None:
        return d
    return (AND, d, d1)


# -- substitution, written independently of the engine ---------------------


def free_subst(e, env: dict):
    if not env:
        return e
    if type(e) is Var:
        return Const(env[e.name]) if e.name in env else e
    if type(e) is Call:
        return Call(e.head, tuple(free_subst(a, env) for a in e.args))
    if type(e) is DI:
        scope = dict(env)
        new = []
        for d in e.decls:
            if type(d) is FunDef:
                local = {k: v for k, v in scope.items() if k not in d.head.variables()}
                new.append(FunDef(d.head, free_subst(d.body, local)))
            elif type(d) is Query:
                params = tuple(Const(scope[p.name]) if type(p) is Var and p.name in scope else p
                               for p in d.head.params)
                new.append(Query(HeadPattern(d.head.function, params), d.result, d.module))
                scope.pop(d.result, None)
            else:
                new.append(d)
        return DI(tuple(new), free_subst(e.body, scope))
    return e


def subst_after_query(decls, body, var, w):
    """Replace *var* by *w* in the declarations after a query and in the body, respecting shadowing."""
    scope = {var: w}
    out = []
    for d in decls:
        if scope and type(d) is FunDef and var not in d.head.variables():
            d = FunDef(d.head, free_subst(d.body, scope))
        elif scope and type(d) is Query:
            d = Query(HeadPattern(d.head.function, tuple(
                Const(w) if type(p) is Var and p.name == var else p for p in d.head.params)), d.result, d.module)
            if d.result == var:
                scope = {}
        out.append(d)
    return out, (free_subst(body, scope) if body is not None else None)


def bind(params, args):
    env = {}
    for p, a in zip(params, args):
        if type(p) is Const:
            if p.value != a:
                return None
        elif type(p) is Var:
            env[p.name] = a
        elif type(p) is Succ:
            if type(a) is not Int or a.value - p.offset < 0:
                return None
            env[p.var] = Int(a.value - p.offset)
    return env


def prim(h, cs):
    if len(cs) != 2 or h not in ("+", "-", "*", "<", "<=", "==", "mod", "div"):
        return None
    x, y = cs
    if h == "==":
        return Bool(x == y)
    if type(x) is not Int or type(y) is not Int:
        raise OracleError("TypeError")
    a, b = x.value, y.value
    if h in ("mod", "div"):
        if b == 0:
            raise OracleError("DivisionByZero")
        q, r = divmod(a, b)
        return Int(r if h == "mod" else q)
    return {"+": lambda: Int(a + b), "-": lambda: Int(a - b), "*": lambda: Int(a * b),
            "<": lambda: Bool(a < b), "<=": lambda: Bool(a <= b)}[h]()


class DerivationSearch:
    def __init__(self, modules: dict, newest_first=True, max_depth=50, max_steps=None, max_hops=64):
        self.modules = modules  # name -> raw declaration tuple
        self.newest_first = newest_first
        self.max_depth = max_depth
        self.max_steps = max_steps
        self.max_hops = max_hops
        self.steps = 0
        self.module_trees = {}
        self.preparing = []

    # eval(D, E, K)

    def ev(self, D, E, depth, qs):
        t = type(E)
        if t is Top:                                      # rule 5
            yield Sym("T")
        elif t is Const:                                  # rule 6
            yield E.value
        elif t is Var:
            raise OracleError("UnboundVariable")
        elif t is Call:
            if all(type(a) is Const for a in E.args):     # rule 7
                yield from self.r7(D, E.head, tuple(a.value for a in E.args), depth, qs)
            else:                                         # rule 8
                for cs in self.args(D, E.args, depth, qs):
                    yield from self.r7(D, E.head, cs, depth, qs)
        elif t is DI:
            yield from self.di(D, list(E.decls), E.body, depth, qs, 0)
        else:
            raise AssertionError(E)

    def args(self, D, es, depth, qs):
        if not es:
            yield ()
            return
        for c in self.ev(D, es[0], depth, qs):
            for rest in self.args(D, es[1:], depth, qs):
                yield (c,) + rest

    def r7(self, D, h, cs, depth, qs):
        if depth + 1 > self.max_depth:
            raise OracleError("DepthExceeded")
        self.steps += 1
        if self.max_steps is not None and self.steps > self.max_steps:
            raise OracleError("StepLimitExceeded")
        matched = []
        yield from self.bc(D, D, h, cs, depth + 1, qs, matched)
        if not matched:
            v = prim(h, cs)
            if v is not None:
                yield v

    # bc(D1, D, h(c..), K)

    def leaves(self, tree):
        """Clauses in the order rules 2 and 3 visit them (rule 3 first when newest_first)."""
        stack, out = [tree], []
        while stack:
            t = stack.pop()
            if t is None:
                continue
            if type(t) is tuple:
                first, second = (t[2], t[1]) if self.newest_first else (t[1], t[2])
                stack.append(second)
                stack.append(first)
            else:
                out.append(t)
        return out

    def bc(self, D1, D, h, cs, depth, qs, matched):
        for d in self.leaves(D1):
            if type(d) is not FunDef or d.head.function != h or len(d.head.params) != len(cs):
                continue
            env = bind(d.head.params, cs)                 # rule 4 (rule 1 when env is empty)
            if env is None:
                continue
            matched.append(True)
            yield from self.ev(D, free_subst(d.body, env), depth, qs)

    # rules 9, 10, 11

    def di(self, D, ante, body, depth, qs, splices):
        i = next((j for j, d in enumerate(ante) if type(d) is not FunDef), None)
        if i is None:                                     # rule 9
            yield from self.ev(extend(D, conj(ante)), body, depth, qs)
            return
        d = ante[i]
        if type(d) is Import:                             # rule 10
            if splices > 200:
                raise OracleError("CyclicImport")
            yield from self.di(D, ante[:i] + list(self.modules[d.module]) + ante[i + 1:],
                               body, depth, qs, splices + 1)
            return
        for fact, w in self.query(d, depth, qs):          # rule 11
            rest, body2 = subst_after_query(ante[i + 1:], body, d.result, w)
            yield from self.di(D, ante[:i] + [fact] + rest, body2, depth, qs, splices)

    def query(self, q, depth, qs):
        if not all(type(p) is Const for p in q.head.params):
            raise OracleError("MQNonGround")
        cs = tuple(p.value for p in q.head.params)
        key = (q.module, q.head.function, cs)
        if key in qs:
            raise OracleError("QueryCycle")
        if len(qs) >= self.max_hops:
            raise OracleError("QueryDepthExceeded")
        M = self.module_tree(q.module, depth, qs)
        for w in self.r7(M, q.head.function, cs, depth, qs + (key,)):
            yield FunDef(HeadPattern(q.head.function, q.head.params), Const(w)), w

    def module_tree(self, name, depth, qs):
        if name not in self.module_trees:
            if name in self.preparing:
                raise OracleError("QueryCycle")
            self.preparing.append(name)
            try:
                self.module_trees[name] = self.close(self.modules[name], depth, qs)
            finally:
                self.preparing.pop()
        return self.module_trees[name]

    def close(self, decls, depth=0, qs=()):
        """First way of turning a declaration list into a definition-only tree."""
        for K in self.di_closed(list(decls), depth, qs):
            return K
        raise OracleError("NoDerivation")

    def di_closed(self, ante, depth, qs, splices=0):
        i = next((j for j, d in enumerate(ante) if type(d) is not FunDef), None)
        if i is None:
            yield conj(ante)
            return
        d = ante[i]
        if type(d) is Import:
            if splices > 200:
                raise OracleError("CyclicImport")
            yield from self.di_closed(ante[:i] + list(self.modules[d.module]) + ante[i + 1:], depth, qs, splices + 1)
            return
        for fact, w in self.query(d, depth, qs):
            tail, _ = subst_after_query(ante[i + 1:], None, d.result, w)
            yield from self.di_closed(ante[:i] + [fact] + tail, depth, qs, splices)

    # entry point

    def solve(self, program, expr, limit=1):
        """Up to *limit* outcomes: values in order, then an error reason if one stopped the search."""
        out = []
        try:
            D = self.close(program)
            for v in self.ev(D, expr, 0, ()):
                out.append(v)
                if len(out) >= limit:
                    return out
        except OracleError as exc:
            out.append(exc.reason)
            return out
        out.append("NoDerivation")
        return out
