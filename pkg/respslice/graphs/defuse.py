# graphs/defuse.py
"""
Definitions and uses of statements, and the effects of calls.

Variables are identified by analysis keys: the symbol key for plain variables and `<base>.<field>` for composite
field variables. Array element assignments and mutating calls are weak definitions of the whole array or object,
they define it without killing earlier definitions.
"""
from dataclasses import dataclass, field
import logging

from ..lang import (Program, Method, Symbol, Expr, VarRef, FieldRef, Index, Call, Stmt, VarDecl, Assign,
                    FieldAssign, If, While, For, Return, Print, Write, CallStmt, BUILTINS, walk, walk_expr,
                    header_exprs)
from .models import DefUse, ENTRY


@dataclass(frozen=True)
class CallEffects:
    """
    What a call of a method can do to the state of its caller.
    """
    mutates_receiver: bool = False
    """The callee may change the object it is called on."""
    mutated_args: frozenset[int] = frozenset()
    """Positions of reference arguments whose state the callee may change."""
    globals_written: frozenset[str] = frozenset()
    globals_read: frozenset[str] = frozenset()
    performs_output: bool = False
    """The callee prints or writes files, directly or through other calls."""

    @property
    def side_effecting(self) -> bool:
        return bool(self.mutates_receiver or self.mutated_args or self.globals_written or self.performs_output)


NO_EFFECTS = CallEffects()


def root_key(e: Expr) -> str | None:
    """
    :param e: An expression.
    :return: The key of the variable at the root of a variable, field or element access, None otherwise.
    """
    match e:
        case VarRef(symbol=sym, name=name):
            return sym.key if sym is not None else name
        case FieldRef(obj=obj):
            return root_key(obj)
        case Index(array=array):
            return root_key(array)
    return None


def access_path(e: Expr) -> str | None:
    """
    :param e: An expression.
    :return: The composite key of a chain of field accesses on a variable (o.f.g), the plain key of a variable,
        None for anything else.
    """
    match e:
        case VarRef():
            return root_key(e)
        case FieldRef(obj=obj, field=f):
            base = access_path(obj)
            return f'{base}.{f}' if base is not None else None
    return None


def expr_uses(e: Expr | None) -> set[str]:
    """
    :param e: An expression.
    :return: The keys of all variables read by the expression, composite field variables included.
    """
    uses = set()
    for x in walk_expr(e):
        if isinstance(x, VarRef):
            uses.add(root_key(x))
        elif isinstance(x, FieldRef) and (path := access_path(x)) is not None:
            uses.add(path)
    return uses


class EffectAnalysis:
    """
    Computes and caches the call effects of the methods of one program.

    A callee mutates its receiver if its body assigns a field of this, or passes this on to another call. The same
    holds for reference parameters, array element assignments included. Globals written or read are collected
    through all transitively called methods.
    """
    program: Program

    def __init__(self, program: Program):
        self.program = program
        self._cache: dict[str, CallEffects] = {}
        self._methods = {m.qualified_name: m for m in program.all_methods()}

    def of_call(self, call: Call) -> CallEffects:
        """
        :param call: A resolved call.
        :return: The effects of the call, NO_EFFECTS for builtins.
        """
        if call.target is None or call.target in BUILTINS and call.receiver is None:
            return NO_EFFECTS
        return self.of_method(call.target)

    def of_method(self, name: str, _active: frozenset[str] = frozenset()) -> CallEffects:
        """
        :param name: The qualified name of a method.
        :return: The effects of calling the method.
        :raises KeyError: If the program has no such method.
        """
        if name in self._cache:
            return self._cache[name]
        method = self._methods.get(name)
        if method is None:
            raise KeyError(f'The program has no method "{name}".')
        if name in _active:
            # recursive call, assume the worst for the parts still being computed
            return CallEffects(True, frozenset(range(len(method.params))), frozenset(), frozenset(), True)
        active = _active | {name}
        params = {p.symbol.key: i for i, p in enumerate(method.params) if p.symbol is not None}
        mutates_receiver = False
        mutated_args = set()
        written, read = set(), set()
        output = False

        def escape(e: Expr | None):
            nonlocal mutates_receiver
            key = root_key(e) if e is not None else None
            if key == 'this':
                mutates_receiver = True
            elif key in params and method.params[params[key]].type.is_reference:
                mutated_args.add(params[key])

        for s in walk(method.body):
            for x in header_exprs(s):
                for e in walk_expr(x):
                    if isinstance(e, VarRef) and e.symbol is not None and e.symbol.kind == 'global':
                        read.add(e.symbol.key)
                    elif isinstance(e, Call) and not (e.target in BUILTINS and e.receiver is None):
                        callee = self.of_method(e.target, active)
                        written |= callee.globals_written
                        read |= callee.globals_read
                        output = output or callee.performs_output
                        if e.receiver is not None:
                            escape(e.receiver)
                        for a in e.args:
                            escape(a)
            if isinstance(s, (Print, Write)):
                output = True
            targets = []
            if isinstance(s, (Assign, FieldAssign)):
                targets.append(s.target)
            elif isinstance(s, For):
                targets += [x.target for x in (s.init, s.update) if isinstance(x, Assign)]
            for t in targets:
                if isinstance(t, VarRef):
                    if t.symbol is not None and t.symbol.kind == 'global':
                        written.add(t.symbol.key)
                    continue
                escape(t)
                root = _root_symbol(t)
                if root is not None and root.kind == 'global':
                    written.add(root.key)
        effects = CallEffects(mutates_receiver, frozenset(mutated_args), frozenset(written), frozenset(read),
                              output)
        if not _active:
            self._cache[name] = effects
        logging.debug(f'Call effects of "{name}": {effects}')
        return effects


def _root_symbol(e: Expr) -> Symbol | None:
    match e:
        case VarRef(symbol=sym):
            return sym
        case FieldRef(obj=obj):
            return _root_symbol(obj)
        case Index(array=array):
            return _root_symbol(array)
    return None


class DefUseAnalysis:
    """
    Computes the DefUse of every statement of a method.
    """
    program: Program
    method: Method
    effects: EffectAnalysis
    symbols: dict[str, Symbol]
    """The symbols of all plain variable keys appearing in the method, globals included."""

    def __init__(self, program: Program, method: Method, effects: EffectAnalysis | None = None):
        self.program = program
        self.method = method
        self.effects = effects if effects is not None else EffectAnalysis(program)
        self.symbols = {}
        for g in program.globals:
            if g.symbol is not None:
                self.symbols[g.symbol.key] = g.symbol
        for p in method.params:
            if p.symbol is not None:
                self.symbols[p.symbol.key] = p.symbol
        for s in walk(method.body):
            for d in [s, getattr(s, 'init', None)]:
                if isinstance(d, VarDecl) and d.symbol is not None:
                    self.symbols[d.symbol.key] = d.symbol
            for x in header_exprs(s):
                for e in walk_expr(x):
                    if isinstance(e, VarRef) and e.symbol is not None:
                        self.symbols[e.symbol.key] = e.symbol

    def table(self) -> dict[int, DefUse]:
        """
        :return: The DefUse of ENTRY and every statement, keyed by statement id.
        """
        entry = frozenset(k for k, s in self.symbols.items() if s.kind in ('param', 'this', 'global'))
        table = {ENTRY: DefUse(defs=entry, kills=entry)}
        for s in walk(self.method.body):
            table[s.id] = self.of(s)
        return table

    def of(self, s: Stmt) -> DefUse:
        """
        :param s: A statement of the method.
        :return: Its definitions and uses. Compound statements only account for their header.
        """
        acc = _Acc()
        match s:
            case VarDecl():
                self._decl(s, acc)
            case Assign() | FieldAssign():
                self._assign(s, acc)
            case For(init=init, cond=cond, update=update):
                if isinstance(init, VarDecl):
                    self._decl(init, acc)
                elif init is not None:
                    self._assign(init, acc)
                self._expr(cond, acc)
                if update is not None:
                    self._assign(update, acc)
            case If(cond=cond) | While(cond=cond):
                self._expr(cond, acc)
            case Return(value=value):
                self._expr(value, acc)
            case Print(value=value) | Write(value=value):
                self._expr(value, acc)
            case CallStmt(call=call):
                self._expr(call, acc)
        return DefUse(frozenset(acc.defs), frozenset(acc.kills), frozenset(acc.uses), frozenset(acc.mutated))

    def _decl(self, d: VarDecl, acc: '_Acc'):
        if d.init is not None:
            self._expr(d.init, acc)
            acc.defs.add(d.symbol.key)
            acc.kills.add(d.symbol.key)

    def _assign(self, s: Assign | FieldAssign, acc: '_Acc'):
        self._expr(s.value, acc)
        target = s.target
        if isinstance(target, VarRef):
            acc.defs.add(root_key(target))
            acc.kills.add(root_key(target))
            return
        if isinstance(target, Index):
            self._expr(target.array, acc)
            self._expr(target.index, acc)
        else:
            self._expr(target.obj, acc)
        root = root_key(target)
        path = access_path(target)
        if path is not None:
            acc.defs.add(path)
            acc.kills.add(path)
        else:
            base = target
            while isinstance(base, Index):
                base = base.array
            weak = access_path(base) or root
            if weak is not None:
                acc.defs.add(weak)
                acc.uses.add(weak)
        if root is not None:
            acc.mutated.add(root)

    def _expr(self, e: Expr | None, acc: '_Acc'):
        acc.uses |= expr_uses(e)
        for x in walk_expr(e):
            if isinstance(x, Call):
                self._call(x, acc)

    def _call(self, call: Call, acc: '_Acc'):
        effects = self.effects.of_call(call)
        acc.uses |= effects.globals_read
        acc.defs |= effects.globals_written
        changed = [call.receiver] if effects.mutates_receiver else []
        changed += [call.args[i] for i in effects.mutated_args if i < len(call.args)]
        for e in changed:
            key = root_key(e)
            if key is not None:
                acc.defs.add(key)
                acc.mutated.add(key)


@dataclass
class _Acc:
    defs: set = field(default_factory=set)
    kills: set = field(default_factory=set)
    uses: set = field(default_factory=set)
    mutated: set = field(default_factory=set)
