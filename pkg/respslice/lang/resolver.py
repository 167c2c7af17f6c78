# lang/resolver.py
"""
Numbers, resolves and type-checks raw MIMPL programs.

Statement ids are assigned per method in pre-order starting at 1. Every variable reference is bound to a Symbol,
every call to its target. The checker enforces Java's local variable rules: no redeclaration of a visible local,
definite assignment before use, single assignment of final locals, no unreachable statements and a return on every
path of a non-void method.
"""
from collections import Counter
from dataclasses import dataclass
import logging

from ..errors import NameResolutionError, MimplTypeError, DuplicateMethodError
from .models import (Type, INT, BOOL, STRING, VOID, NULL, PRIMITIVES, Symbol, Expr, IntLit, BoolLit, StrLit,
                     NullLit, VarRef, FieldRef, Index, BinOp, UnOp, Call, NewObject, NewArray, ArrayLit, Stmt,
                     VarDecl, Assign, FieldAssign, If, While, For, Block, Return, Print, Write, CallStmt, Param,
                     Method, ClassDecl, Program, walk)

BUILTINS = {'length': (None, INT), 'abs': (INT, INT)}
"""Builtin functions: name -> (parameter type, return type). None accepts any array."""


def assignable(target: Type, value: Type) -> bool:
    """
    :param target: The declared type.
    :param value: The type of the assigned expression.
    :return: True if a value of type value can be stored in a variable of type target.
    """
    return target == value or (value == NULL and target.is_reference)


def _declared_names(body: tuple[Stmt, ...]) -> Counter:
    names = Counter()
    for s in walk(body):
        if isinstance(s, VarDecl):
            names[s.name] += 1
        elif isinstance(s, For) and isinstance(s.init, VarDecl):
            names[s.init.name] += 1
    return names


@dataclass
class _Flow:
    """Definite assignment state flowing through a statement list."""
    assigned: frozenset
    """Locals definitely assigned."""
    maybe: frozenset
    """Locals possibly assigned."""
    returns: bool = False
    """True if every path has returned."""


class MethodResolver:
    """
    Resolves and checks one method. Use resolve_program for whole programs.
    """
    program: Program
    """The raw program providing globals, classes and method signatures."""
    method: Method
    """The method being resolved."""

    def __init__(self, program: Program, method: Method, globals_: dict[str, Symbol]):
        self.program = program
        self.method = method
        self.globals = globals_
        self.next_id = 1
        self.scopes: list[dict[str, Symbol]] = []
        self.loop_depth = 0
        self.decl_depth: dict[Symbol, int] = {}
        counts = _declared_names(method.body)
        for p in method.params:
            counts[p.name] += 1
        self.ambiguous = {n for n, c in counts.items() if c > 1 or n in globals_}

    def resolve(self) -> Method:
        """
        :return: The numbered and resolved method.
        :raises NameResolutionError: On undeclared or redeclared identifiers.
        :raises MimplTypeError: On type, assignment or reachability errors.
        """
        logging.debug(f'Resolving method "{self.method.qualified_name}".')
        scope = {}
        if self.method.owner is not None:
            scope['this'] = Symbol('this', Type(self.method.owner), 'this', key='this')
        params = []
        for p in self.method.params:
            if p.name in scope:
                raise NameResolutionError(f'Duplicate parameter "{p.name}" in method '
                                          f'"{self.method.qualified_name}"')
            self._check_type(p.type, 0)
            sym = Symbol(p.name, p.type, 'param', 0, p.final, f'{p.name}@0' if p.name in self.globals else p.name)
            scope[p.name] = sym
            params.append(Param(p.name, p.type, p.final, sym))
        self.scopes.append(scope)
        flow = _Flow(frozenset(), frozenset())
        body, flow = self._stmts(self.method.body, flow)
        if self.method.return_type != VOID and not flow.returns:
            raise MimplTypeError(f'Missing return statement in method "{self.method.qualified_name}"')
        self.scopes.pop()
        return Method(self.method.name, tuple(params), self.method.return_type, body, self.method.owner,
                      self.next_id - 1)

    # scopes

    def _lookup(self, name: str, line: int) -> Symbol:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        if name in self.globals:
            return self.globals[name]
        if name == 'this':
            raise NameResolutionError(f'"this" used outside a class method "{self.method.qualified_name}"', line)
        raise NameResolutionError(f'Undeclared identifier "{name}" in method "{self.method.qualified_name}"',
                                  line)

    def _declare(self, decl: VarDecl, stmt_id: int) -> Symbol:
        for scope in self.scopes:
            if decl.name in scope:
                raise NameResolutionError(f'Variable "{decl.name}" is already defined in method '
                                          f'"{self.method.qualified_name}"', decl.line)
        key = f'{decl.name}@{stmt_id}' if decl.name in self.ambiguous else decl.name
        sym = Symbol(decl.name, decl.type, 'local', stmt_id, decl.final, key)
        self.scopes[-1][decl.name] = sym
        self.decl_depth[sym] = self.loop_depth
        return sym

    def _check_type(self, t: Type, line: int):
        if t.name not in PRIMITIVES and self.program.class_decl(t.name) is None:
            raise NameResolutionError(f'Unknown type "{t}"', line)

    # statements

    def _stmts(self, stmts: tuple[Stmt, ...], flow: _Flow, new_scope: bool = True) -> tuple[tuple, _Flow]:
        if new_scope:
            self.scopes.append({})
        out = []
        for s in stmts:
            if flow.returns:
                raise MimplTypeError('Unreachable statement', getattr(s, 'line', 0))
            s, flow = self._stmt(s, flow)
            out.append(s)
        if new_scope:
            self.scopes.pop()
        return tuple(out), flow

    def _take_id(self) -> int:
        stmt_id = self.next_id
        self.next_id += 1
        return stmt_id

    def _stmt(self, s: Stmt, flow: _Flow) -> tuple[Stmt, _Flow]:
        stmt_id = self._take_id()
        match s:
            case VarDecl():
                return self._var_decl(s, flow, stmt_id)
            case Assign() | FieldAssign():
                return self._assign(s, flow, stmt_id)
            case If(cond=cond, then=then, orelse=orelse):
                cond = self._condition(cond, flow, s.line)
                then, then_flow = self._stmts(then, flow)
                if orelse is None:
                    else_flow = flow
                else:
                    orelse, else_flow = self._stmts(orelse, flow)
                if then_flow.returns and else_flow.returns:
                    merged = _Flow(then_flow.assigned | else_flow.assigned, then_flow.maybe | else_flow.maybe, True)
                elif then_flow.returns:
                    merged = _Flow(else_flow.assigned, else_flow.maybe)
                elif else_flow.returns:
                    merged = _Flow(then_flow.assigned, then_flow.maybe)
                else:
                    merged = _Flow(then_flow.assigned & else_flow.assigned, then_flow.maybe | else_flow.maybe)
                return If(cond, then, orelse, stmt_id, s.line), merged
            case While(cond=cond, body=body):
                cond = self._condition(cond, flow, s.line)
                self.loop_depth += 1
                body, body_flow = self._stmts(body, flow)
                self.loop_depth -= 1
                return While(cond, body, stmt_id, s.line), _Flow(flow.assigned, flow.maybe | body_flow.maybe)
            case For(init=init, cond=cond, update=update, body=body):
                self.scopes.append({})
                if init is not None:
                    init, flow = self._simple(init, flow, stmt_id)
                cond = self._condition(cond, flow, s.line)
                self.loop_depth += 1
                body, body_flow = self._stmts(body, flow)
                if update is not None:
                    update, body_flow = self._simple(update, _Flow(body_flow.assigned, body_flow.maybe), stmt_id)
                self.loop_depth -= 1
                self.scopes.pop()
                return (For(init, cond, update, body, stmt_id, s.line),
                        _Flow(flow.assigned, flow.maybe | body_flow.maybe))
            case Block(body=body):
                body, flow = self._stmts(body, flow)
                return Block(body, stmt_id, s.line), flow
            case Return(value=value):
                expected = self.method.return_type
                if value is None:
                    if expected != VOID:
                        raise MimplTypeError(f'Missing return value in method "{self.method.qualified_name}"',
                                             s.line)
                else:
                    if expected == VOID:
                        raise MimplTypeError(f'Void method "{self.method.qualified_name}" returns a value', s.line)
                    value, t = self._expr(value, flow)
                    if not assignable(expected, t):
                        raise MimplTypeError(f'Return type {t} does not match {expected}', s.line)
                return Return(value, stmt_id, s.line), _Flow(flow.assigned, flow.maybe, True)
            case Print(value=value):
                value, _ = self._expr(value, flow)
                return Print(value, stmt_id, s.line), flow
            case Write(file=file, value=value):
                value, _ = self._expr(value, flow)
                return Write(file, value, stmt_id, s.line), flow
            case CallStmt(call=call):
                call, _ = self._call(call, flow, allow_void=True)
                return CallStmt(call, stmt_id, s.line), flow
        raise MimplTypeError(f'Unknown statement {s!r}')

    def _simple(self, s: Stmt, flow: _Flow, stmt_id: int) -> tuple[Stmt, _Flow]:
        if isinstance(s, VarDecl):
            return self._var_decl(s, flow, stmt_id, header=True)
        return self._assign(s, flow, stmt_id, header=True)

    def _var_decl(self, s: VarDecl, flow: _Flow, stmt_id: int, header: bool = False) -> tuple[Stmt, _Flow]:
        self._check_type(s.type, s.line)
        init = None
        if s.init is not None:
            init, t = self._expr(s.init, flow)
            if not assignable(s.type, t):
                raise MimplTypeError(f'Cannot assign {t} to "{s.name}" of type {s.type}', s.line)
        sym = self._declare(s, stmt_id)
        if init is not None:
            flow = _Flow(flow.assigned | {sym}, flow.maybe | {sym}, flow.returns)
        return VarDecl(s.type, s.name, init, s.final, 0 if header else stmt_id, sym, s.line), flow

    def _assign(self, s: Assign | FieldAssign, flow: _Flow, stmt_id: int, header: bool = False):
        value, value_type = self._expr(s.value, flow)
        new_id = 0 if header else stmt_id
        if isinstance(s, FieldAssign):
            target, t = self._expr(s.target, flow)
            if not assignable(t, value_type):
                raise MimplTypeError(f'Cannot assign {value_type} to field "{s.target.field}" of type {t}', s.line)
            return FieldAssign(target, value, new_id, s.line), flow
        if isinstance(s.target, Index):
            target, t = self._expr(s.target, flow)
            if not assignable(t, value_type):
                raise MimplTypeError(f'Cannot assign {value_type} to an element of type {t}', s.line)
            return Assign(target, value, new_id, s.line), flow
        sym = self._lookup(s.target.name, s.line)
        if sym.kind == 'this':
            raise MimplTypeError('Cannot assign to "this"', s.line)
        if not assignable(sym.type, value_type):
            raise MimplTypeError(f'Cannot assign {value_type} to "{sym.name}" of type {sym.type}', s.line)
        if sym.final:
            if sym.kind != 'local' or sym in flow.maybe:
                raise MimplTypeError(f'The final variable "{sym.name}" may already have been assigned', s.line)
            if self.loop_depth > self.decl_depth.get(sym, 0):
                raise MimplTypeError(f'The final variable "{sym.name}" is assigned in a loop', s.line)
        if sym.kind == 'local':
            flow = _Flow(flow.assigned | {sym}, flow.maybe | {sym}, flow.returns)
        target = VarRef(s.target.name, sym, s.target.line)
        return Assign(target, value, new_id, s.line), flow

    def _condition(self, cond: Expr, flow: _Flow, line: int) -> Expr:
        cond, t = self._expr(cond, flow)
        if t != BOOL:
            raise MimplTypeError(f'Condition must be bool, but is {t}', line)
        return cond

    # expressions

    def _expr(self, e: Expr, flow: _Flow) -> tuple[Expr, Type]:
        match e:
            case IntLit():
                return e, INT
            case BoolLit():
                return e, BOOL
            case StrLit():
                return e, STRING
            case NullLit():
                return e, NULL
            case VarRef(name=name):
                sym = self._lookup(name, e.line)
                if sym.kind == 'local' and sym not in flow.assigned:
                    raise MimplTypeError(f'Variable "{name}" might not have been initialized', e.line)
                return VarRef(name, sym, e.line), sym.type
            case FieldRef(obj=obj, field=field):
                obj, t = self._expr(obj, flow)
                cls = self.program.class_decl(t.name) if t.is_object else None
                field_type = cls.field_type(field) if cls is not None else None
                if field_type is None:
                    raise MimplTypeError(f'Type {t} has no field "{field}"', e.line)
                return FieldRef(obj, field, e.line), field_type
            case Index(array=array, index=index):
                array, t = self._expr(array, flow)
                index, it = self._expr(index, flow)
                if not t.is_array:
                    raise MimplTypeError(f'Cannot index a value of type {t}', e.line)
                if it != INT:
                    raise MimplTypeError(f'Array index must be int, but is {it}', e.line)
                return Index(array, index, e.line), t.element()
            case BinOp(op=op, left=left, right=right):
                left, lt = self._expr(left, flow)
                right, rt = self._expr(right, flow)
                return BinOp(op, left, right, e.line), self._binop_type(op, lt, rt, e.line)
            case UnOp(op=op, operand=operand):
                operand, t = self._expr(operand, flow)
                expected = INT if op == '-' else BOOL
                if t != expected:
                    raise MimplTypeError(f'Operator {op} expects {expected}, but got {t}', e.line)
                return UnOp(op, operand, e.line), t
            case Call():
                return self._call(e, flow, allow_void=False)
            case NewObject(cls=cls):
                if self.program.class_decl(cls) is None:
                    raise NameResolutionError(f'Unknown class "{cls}"', e.line)
                return e, Type(cls)
            case NewArray(type=t, size=size):
                self._check_type(Type(t.name), e.line)
                size, st = self._expr(size, flow)
                if st != INT:
                    raise MimplTypeError(f'Array size must be int, but is {st}', e.line)
                return NewArray(t, size, e.line), t
            case ArrayLit(elements=elements):
                typed = [self._expr(x, flow) for x in elements]
                element_type = typed[0][1]
                for _, t in typed:
                    if t != element_type:
                        raise MimplTypeError(f'Array literal mixes {element_type} and {t}', e.line)
                return ArrayLit(tuple(x for x, _ in typed), e.line), Type(element_type.name, element_type.dims + 1)
        raise MimplTypeError(f'Unknown expression {e!r}')

    @staticmethod
    def _binop_type(op: str, lt: Type, rt: Type, line: int) -> Type:
        if op == '+' and (lt == STRING or rt == STRING):
            return STRING
        if op in ('+', '-', '*', '/', '%'):
            if lt == INT and rt == INT:
                return INT
        elif op in ('<', '<=', '>', '>='):
            if lt == INT and rt == INT:
                return BOOL
        elif op in ('&&', '||'):
            if lt == BOOL and rt == BOOL:
                return BOOL
        elif op in ('==', '!='):
            if lt == rt or assignable(lt, rt) or assignable(rt, lt):
                return BOOL
        raise MimplTypeError(f'Operator {op} is not defined for {lt} and {rt}', line)

    def _call(self, call: Call, flow: _Flow, allow_void: bool) -> tuple[Call, Type]:
        args = [self._expr(a, flow) for a in call.args]
        receiver = None
        if call.receiver is not None:
            receiver, rt = self._expr(call.receiver, flow)
            cls = self.program.class_decl(rt.name) if rt.is_object else None
            if cls is None:
                raise MimplTypeError(f'Cannot call "{call.name}" on a value of type {rt}', call.line)
            target = next((m for m in cls.methods if m.name == call.name), None)
            target_name = f'{cls.name}.{call.name}'
        elif call.name in BUILTINS:
            param_type, result = BUILTINS[call.name]
            if len(args) != 1:
                raise MimplTypeError(f'Builtin "{call.name}" expects one argument', call.line)
            t = args[0][1]
            if (param_type is None and not t.is_array) or (param_type is not None and t != param_type):
                raise MimplTypeError(f'Builtin "{call.name}" cannot be applied to {t}', call.line)
            return Call(call.name, tuple(a for a, _ in args), None, call.name, call.line), result
        else:
            target = next((m for m in self.program.methods if m.name == call.name), None)
            target_name = call.name
        if target is None:
            raise NameResolutionError(f'Undeclared method "{target_name}"', call.line)
        if len(target.params) != len(args):
            raise MimplTypeError(f'Method "{target_name}" expects {len(target.params)} arguments, '
                                 f'but got {len(args)}', call.line)
        for p, (_, t) in zip(target.params, args):
            if not assignable(p.type, t):
                raise MimplTypeError(f'Argument "{p.name}" of "{target_name}" expects {p.type}, but got {t}',
                                     call.line)
        if target.return_type == VOID and not allow_void:
            raise MimplTypeError(f'The void method "{target_name}" is used as a value', call.line)
        return Call(call.name, tuple(a for a, _ in args), receiver, target_name, call.line), target.return_type


def resolve_program(program: Program) -> Program:
    """
    Numbers, resolves and type-checks a raw program.

    :param program: The raw program from the grammar.
    :return: The resolved program.
    :raises DuplicateMethodError: If two methods share a name.
    :raises NameResolutionError: On undeclared or redeclared identifiers.
    :raises MimplTypeError: If the program does not type-check.
    """
    seen = set()
    for m in program.all_methods():
        if m.qualified_name in seen:
            raise DuplicateMethodError(m.qualified_name)
        seen.add(m.qualified_name)
    class_names = [c.name for c in program.classes]
    for c in program.classes:
        if class_names.count(c.name) > 1:
            raise NameResolutionError(f'The class "{c.name}" is declared more than once')
        field_names = [f.name for f in c.fields]
        if len(set(field_names)) != len(field_names):
            raise NameResolutionError(f'The class "{c.name}" declares a field twice')
    globals_ = {}
    resolved_globals = []
    checker = MethodResolver(program, Method('<globals>', (), VOID, ()), globals_)
    for g in program.globals:
        if g.name in globals_:
            raise NameResolutionError(f'The global "{g.name}" is declared more than once', g.line)
        checker._check_type(g.type, g.line)
        init = None
        if g.init is not None:
            init, t = checker._expr(g.init, _Flow(frozenset(), frozenset()))
            if not assignable(g.type, t):
                raise MimplTypeError(f'Cannot assign {t} to "{g.name}" of type {g.type}', g.line)
        sym = Symbol(g.name, g.type, 'global', -1, g.final, g.name)
        globals_[g.name] = sym
        resolved_globals.append(VarDecl(g.type, g.name, init, g.final, 0, sym, g.line))
    methods = tuple(MethodResolver(program, m, globals_).resolve() for m in program.methods)
    classes = tuple(ClassDecl(c.name, c.fields, tuple(MethodResolver(program, m, globals_).resolve()
                                                      for m in c.methods))
                    for c in program.classes)
    entry = 'main' if any(m.name == 'main' for m in methods) else None
    return Program(tuple(resolved_globals), classes, methods, entry)
