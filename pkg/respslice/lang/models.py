# lang/models.py
"""
The abstract syntax tree of MIMPL (Mini IMperative Language).

All node classes are frozen dataclasses. Statements carry the dense per-method id assigned by the resolver, source
lines and resolved symbols are excluded from equality, so two trees compare equal exactly when they are
structurally equal.
"""
from dataclasses import dataclass, field
from typing import ClassVar, Iterator

PRIMITIVES = ('int', 'bool', 'string')
"""The primitive type names."""


@dataclass(frozen=True)
class Type:
    """
    A MIMPL type: a primitive, a class name, void or null, with an array dimension.
    """
    name: str
    """The base type name."""
    dims: int = 0
    """The number of array dimensions."""

    def __str__(self):
        return self.name + '[]' * self.dims

    @property
    def is_array(self) -> bool:
        return self.dims > 0

    @property
    def is_object(self) -> bool:
        return self.dims == 0 and self.name not in PRIMITIVES + ('void', 'null')

    @property
    def is_reference(self) -> bool:
        """True for arrays, objects and null, which are passed by reference."""
        return self.is_array or self.is_object or self.name == 'null'

    def element(self) -> 'Type':
        """
        :return: The element type of an array type.
        :raises TypeError: If this is not an array type.
        """
        if not self.is_array:
            raise TypeError(f'{self} is not an array type.')
        return Type(self.name, self.dims - 1)


INT = Type('int')
BOOL = Type('bool')
STRING = Type('string')
VOID = Type('void')
NULL = Type('null')


@dataclass(frozen=True)
class Symbol:
    """
    A resolved declaration. Symbols identify variables in every analysis.
    """
    name: str
    """The identifier as written."""
    type: Type
    """The declared type."""
    kind: str
    """One of local, param, global or this."""
    decl: int = 0
    """The id of the declaring statement. 0 for parameters and this, -1 for globals."""
    final: bool = False
    """True for final variables."""
    key: str = ''
    """The method-unique analysis key of the variable."""

    def __str__(self):
        return self.key or self.name


# Expressions

@dataclass(frozen=True)
class Expr:
    """Base class of all expressions."""
    kind: ClassVar[str] = 'expr'


@dataclass(frozen=True)
class IntLit(Expr):
    value: int
    kind: ClassVar[str] = 'int-lit'


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool
    kind: ClassVar[str] = 'bool-lit'


@dataclass(frozen=True)
class StrLit(Expr):
    value: str
    kind: ClassVar[str] = 'string-lit'


@dataclass(frozen=True)
class NullLit(Expr):
    kind: ClassVar[str] = 'null-lit'


@dataclass(frozen=True)
class VarRef(Expr):
    name: str
    symbol: Symbol | None = field(default=None, compare=False)
    """Filled in by the resolver."""
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'var-ref'


@dataclass(frozen=True)
class FieldRef(Expr):
    obj: Expr
    field: str
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'field-ref'


@dataclass(frozen=True)
class Index(Expr):
    array: Expr
    index: Expr
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'array-index'


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'binary-op'


@dataclass(frozen=True)
class UnOp(Expr):
    op: str
    operand: Expr
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'unary-op'


@dataclass(frozen=True)
class Call(Expr):
    """
    A call of a top-level method, a builtin, or a class method on a receiver.
    """
    name: str
    args: tuple[Expr, ...] = ()
    receiver: Expr | None = None
    target: str | None = field(default=None, compare=False)
    """The qualified name of the called method, or the builtin name. Filled in by the resolver."""
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'call-expr'


@dataclass(frozen=True)
class NewObject(Expr):
    cls: str
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'new-object'


@dataclass(frozen=True)
class NewArray(Expr):
    type: Type
    """The type of the created array."""
    size: Expr
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'new-array'


@dataclass(frozen=True)
class ArrayLit(Expr):
    elements: tuple[Expr, ...]
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'array-lit'


# Statements

@dataclass(frozen=True)
class Stmt:
    """Base class of all statements."""
    kind: ClassVar[str] = 'stmt'

    def child_lists(self) -> tuple[tuple['Stmt', ...], ...]:
        """
        :return: The nested statement lists of a compound statement, empty for simple statements.
        """
        return ()


@dataclass(frozen=True)
class VarDecl(Stmt):
    type: Type
    name: str
    init: Expr | None = None
    final: bool = False
    id: int = 0
    symbol: Symbol | None = field(default=None, compare=False)
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'var-decl'


@dataclass(frozen=True)
class Assign(Stmt):
    """
    Assignment to a variable or an array element.
    """
    target: Expr
    value: Expr
    id: int = 0
    line: int = field(default=0, compare=False)

    @property
    def kind(self) -> str:
        return 'method-call-assign' if isinstance(self.value, Call) else 'assign'


@dataclass(frozen=True)
class FieldAssign(Stmt):
    target: FieldRef
    value: Expr
    id: int = 0
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'field-assign'


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then: tuple[Stmt, ...]
    orelse: tuple[Stmt, ...] | None = None
    id: int = 0
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'if'

    def child_lists(self):
        return (self.then,) if self.orelse is None else (self.then, self.orelse)


@dataclass(frozen=True)
class While(Stmt):
    cond: Expr
    body: tuple[Stmt, ...]
    id: int = 0
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'while'

    def child_lists(self):
        return (self.body,)


@dataclass(frozen=True)
class For(Stmt):
    """
    A for loop. The header (init, cond and update) is a single statement with a single id.
    """
    init: Stmt | None
    cond: Expr
    update: Stmt | None
    body: tuple[Stmt, ...]
    id: int = 0
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'for'

    def child_lists(self):
        return (self.body,)


@dataclass(frozen=True)
class Block(Stmt):
    body: tuple[Stmt, ...]
    id: int = 0
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'block'

    def child_lists(self):
        return (self.body,)


@dataclass(frozen=True)
class Return(Stmt):
    value: Expr | None = None
    id: int = 0
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'return'


@dataclass(frozen=True)
class Print(Stmt):
    value: Expr
    id: int = 0
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'print'


@dataclass(frozen=True)
class Write(Stmt):
    file: str
    value: Expr
    id: int = 0
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'file-write'


@dataclass(frozen=True)
class CallStmt(Stmt):
    call: Call
    id: int = 0
    line: int = field(default=0, compare=False)
    kind: ClassVar[str] = 'call-stmt'


COMPOUND = (If, While, For, Block)
"""Statement classes owning nested statement lists."""


# Declarations

@dataclass(frozen=True)
class Param:
    name: str
    type: Type
    final: bool = False
    symbol: Symbol | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Method:
    """
    One method, the unit of every analysis.
    """
    name: str
    params: tuple[Param, ...]
    return_type: Type
    body: tuple[Stmt, ...]
    owner: str | None = None
    """The name of the declaring class, None for top-level methods."""
    stmt_count: int = 0
    """The number of statements, ids run from 1 to stmt_count."""

    @property
    def qualified_name(self) -> str:
        return self.name if self.owner is None else f'{self.owner}.{self.name}'

    def statements(self) -> Iterator[Stmt]:
        """
        :return: All statements of the method in id order.
        """
        return walk(self.body)

    def statement(self, stmt_id: int) -> Stmt:
        """
        :param stmt_id: The id of the statement.
        :return: The statement with the given id.
        :raises KeyError: If no statement has this id.
        """
        for s in self.statements():
            if s.id == stmt_id:
                return s
        raise KeyError(f'The method "{self.qualified_name}" has no statement {stmt_id}.')


@dataclass(frozen=True)
class FieldDecl:
    name: str
    type: Type


@dataclass(frozen=True)
class ClassDecl:
    name: str
    fields: tuple[FieldDecl, ...]
    methods: tuple[Method, ...] = ()

    def field_type(self, name: str) -> Type | None:
        for f in self.fields:
            if f.name == name:
                return f.type
        return None


@dataclass(frozen=True)
class Program:
    """
    A MIMPL program: globals, classes and top-level methods.
    """
    globals: tuple[VarDecl, ...] = ()
    classes: tuple[ClassDecl, ...] = ()
    methods: tuple[Method, ...] = ()
    entry: str | None = None
    """The name of the main method, if the program has one."""

    def all_methods(self) -> list[Method]:
        """
        :return: Top-level methods followed by class methods, in declaration order.
        """
        return list(self.methods) + [m for c in self.classes for m in c.methods]

    def method(self, name: str) -> Method:
        """
        :param name: A top-level method name or a qualified class method name (Class.method).
        :return: The method.
        :raises KeyError: If the program has no such method.
        """
        for m in self.all_methods():
            if m.qualified_name == name:
                return m
        raise KeyError(f'The program has no method "{name}".')

    def class_decl(self, name: str) -> ClassDecl | None:
        for c in self.classes:
            if c.name == name:
                return c
        return None

    def with_method(self, method: Method) -> 'Program':
        """
        Replaces the method with the same qualified name.

        :param method: The new method.
        :return: A new program.
        """
        if method.owner is None:
            methods = tuple(method if m.name == method.name else m for m in self.methods)
            return Program(self.globals, self.classes, methods, self.entry)
        classes = tuple(
            ClassDecl(c.name, c.fields, tuple(method if m.name == method.name else m for m in c.methods))
            if c.name == method.owner else c for c in self.classes)
        return Program(self.globals, classes, self.methods, self.entry)

    def add_method(self, method: Method) -> 'Program':
        """
        Appends a method to the program or to its owning class.

        :param method: The method to add.
        :return: A new program.
        """
        if method.owner is None:
            return Program(self.globals, self.classes, self.methods + (method,), self.entry)
        classes = tuple(ClassDecl(c.name, c.fields, c.methods + (method,)) if c.name == method.owner else c
                        for c in self.classes)
        return Program(self.globals, classes, self.methods, self.entry)


def walk(stmts: tuple[Stmt, ...]) -> Iterator[Stmt]:
    """
    Iterates statements in pre-order, which is id order for numbered methods.

    :param stmts: A statement list.
    """
    for s in stmts:
        yield s
        for child_list in s.child_lists():
            yield from walk(child_list)


def walk_expr(expr: Expr | None) -> Iterator[Expr]:
    """
    Iterates an expression and all its sub-expressions in pre-order.

    :param expr: The expression, None yields nothing.
    """
    if expr is None:
        return
    yield expr
    match expr:
        case FieldRef(obj=o):
            yield from walk_expr(o)
        case Index(array=a, index=i):
            yield from walk_expr(a)
            yield from walk_expr(i)
        case BinOp(left=l, right=r):
            yield from walk_expr(l)
            yield from walk_expr(r)
        case UnOp(operand=o):
            yield from walk_expr(o)
        case Call(args=args, receiver=recv):
            yield from walk_expr(recv)
            for a in args:
                yield from walk_expr(a)
        case NewArray(size=s):
            yield from walk_expr(s)
        case ArrayLit(elements=elements):
            for e in elements:
                yield from walk_expr(e)


def header_exprs(stmt: Stmt) -> list[Expr]:
    """
    Returns the expressions evaluated by a statement itself, not by its nested statements.

    :param stmt: The statement.
    :return: The expressions in evaluation order.
    """
    match stmt:
        case VarDecl(init=init):
            return [init] if init is not None else []
        case Assign(target=t, value=v) | FieldAssign(target=t, value=v):
            return [t, v]
        case If(cond=c) | While(cond=c):
            return [c]
        case For(init=init, cond=c, update=u):
            return (header_exprs(init) if init else []) + [c] + (header_exprs(u) if u else [])
        case Return(value=v):
            return [v] if v is not None else []
        case Print(value=v) | Write(value=v):
            return [v]
        case CallStmt(call=c):
            return [c]
    return []


def calls_of(stmt: Stmt) -> list[Call]:
    """
    :param stmt: The statement.
    :return: The calls evaluated by the statement header.
    """
    return [e for x in header_exprs(stmt) for e in walk_expr(x) if isinstance(e, Call)]


def lexical_parents(body: tuple[Stmt, ...], parent: int = 0) -> dict[int, int]:
    """
    Maps every statement id to the id of the innermost enclosing compound statement (0 for the method body).

    :param body: The method body.
    :param parent: The id of the enclosing statement.
    """
    parents = {}
    for s in body:
        parents[s.id] = parent
        for child_list in s.child_lists():
            parents.update(lexical_parents(child_list, s.id))
    return parents


def nesting_levels(body: tuple[Stmt, ...], level: int = 0) -> dict[int, int]:
    """
    Maps every statement id to its nesting level, the number of enclosing compound statements.

    :param body: The method body.
    :param level: The level of the statements in body.
    """
    levels = {}
    for s in body:
        levels[s.id] = level
        for child_list in s.child_lists():
            levels.update(nesting_levels(child_list, level + 1))
    return levels
