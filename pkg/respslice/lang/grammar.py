# lang/grammar.py
"""
The MIMPL grammar and the transformation of lark parse trees into the syntax tree of lang.models.

The trees built here are raw: statement ids are 0 and identifiers are unresolved. Use lang.parse to obtain a
numbered, resolved and type-checked program.
"""
import json

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from ..errors import MimplSyntaxError
from .models import (Type, IntLit, BoolLit, StrLit, NullLit, VarRef, FieldRef, Index, BinOp, UnOp, Call,
                     NewObject, NewArray, ArrayLit, VarDecl, Assign, FieldAssign, If, While, For, Block, Return,
                     Print, Write, CallStmt, Param, Method, FieldDecl, ClassDecl, Program)

mimpl_grammar = r"""
    start: _top*
    _top: global_decl | class_decl | method_decl

    global_decl: var_decl
    class_decl: "class" IDENT "{" (field_decl | method_decl)* "}"
    field_decl: type IDENT ";"
    method_decl: (type | VOID) IDENT "(" [param ("," param)*] ")" block
    param: [FINAL] type IDENT

    type: (INT_T | BOOL_T | STRING_T | IDENT) ARRAY_DIM*

    block: "{" stmt* "}"

    ?stmt: var_decl
         | assign ";"
         | call ";"                                         -> call_stmt
         | if_stmt
         | "while" "(" expr ")" block                       -> while_stmt
         | "for" "(" [for_init] ";" expr ";" [assign] ")" block -> for_stmt
         | RETURN [expr] ";"                                -> return_stmt
         | PRINT "(" expr ")" ";"                           -> print_stmt
         | WRITE "(" STRING "," expr ")" ";"                -> write_stmt
         | block                                            -> block_stmt

    if_stmt: IF "(" expr ")" block ["else" (block | if_stmt)]
    var_decl: [FINAL] type IDENT ["=" expr] ";"
    ?for_init: for_decl | assign
    for_decl: [FINAL] type IDENT "=" expr
    assign: postfix "=" expr

    ?expr: or_expr
    ?or_expr: and_expr
        | or_expr "||" and_expr     -> or_
    ?and_expr: eq_expr
        | and_expr "&&" eq_expr     -> and_
    ?eq_expr: rel_expr
        | eq_expr "==" rel_expr     -> eq
        | eq_expr "!=" rel_expr     -> ne
    ?rel_expr: sum
        | rel_expr "<" sum          -> lt
        | rel_expr "<=" sum         -> le
        | rel_expr ">" sum          -> gt
        | rel_expr ">=" sum         -> ge
    ?sum: product
        | sum "+" product           -> add
        | sum "-" product           -> sub
    ?product: unary
        | product "*" unary         -> mul
        | product "/" unary         -> div
        | product "%" unary         -> mod
    ?unary: "-" unary               -> neg
        | "!" unary                 -> not_
        | postfix

    ?postfix: atom
        | postfix "[" expr "]"      -> index
        | postfix "." IDENT         -> field
        | call

    call: IDENT "(" [expr ("," expr)*] ")"              -> func_call
        | postfix "." IDENT "(" [expr ("," expr)*] ")"  -> method_call

    ?atom: INT                      -> int_lit
        | STRING                    -> str_lit
        | TRUE                      -> true_lit
        | FALSE                     -> false_lit
        | NULL                      -> null_lit
        | THIS                      -> this_ref
        | IDENT                     -> var_ref
        | "(" expr ")"
        | NEW IDENT "(" ")"         -> new_object
        | NEW (INT_T | BOOL_T | STRING_T | IDENT) "[" expr "]" ARRAY_DIM* -> new_array
        | "[" expr ("," expr)* "]"  -> array_lit

    FINAL: "final"
    VOID: "void"
    INT_T: "int"
    BOOL_T: "bool"
    STRING_T: "string"
    IF: "if"
    RETURN: "return"
    PRINT: "print"
    WRITE: "write"
    TRUE: "true"
    FALSE: "false"
    NULL: "null"
    THIS: "this"
    NEW: "new"
    ARRAY_DIM: /\[\s*\]/
    IDENT: /(?!(if|else|while|for|return|print|write|new|true|false|null|final|class|this|int|bool|string|void)\b)[A-Za-z_][A-Za-z0-9_]*/

    COMMENT: /\/\/[^\n]*/
    BLOCK_COMMENT: /\/\*(.|\n)*?\*\//

    %import common.INT
    %import common.ESCAPED_STRING -> STRING
    %import common.WS
    %ignore WS
    %ignore COMMENT
    %ignore BLOCK_COMMENT
"""

BINARY_OPERATORS = {'or_': '||', 'and_': '&&', 'eq': '==', 'ne': '!=', 'lt': '<', 'le': '<=', 'gt': '>',
                    'ge': '>=', 'add': '+', 'sub': '-', 'mul': '*', 'div': '/', 'mod': '%'}
"""Maps grammar aliases to operator symbols."""

_parser = Lark(mimpl_grammar, start='start', parser='earley', ambiguity='resolve', propagate_positions=True)


def _line(meta) -> int:
    return getattr(meta, 'line', 0) if not getattr(meta, 'empty', True) else 0


@v_args(meta=True)
class MimplBuilder(Transformer):
    """
    Builds the raw syntax tree from a lark parse tree.
    """

    def start(self, meta, children):
        globals_, classes, methods = [], [], []
        for c in children:
            if isinstance(c, VarDecl):
                globals_.append(c)
            elif isinstance(c, ClassDecl):
                classes.append(c)
            else:
                methods.append(c)
        return Program(tuple(globals_), tuple(classes), tuple(methods))

    def global_decl(self, meta, children):
        return children[0]

    def class_decl(self, meta, children):
        name = str(children[0])
        fields = tuple(c for c in children[1:] if isinstance(c, FieldDecl))
        methods = tuple(Method(m.name, m.params, m.return_type, m.body, owner=name)
                        for m in children[1:] if isinstance(m, Method))
        return ClassDecl(name, fields, methods)

    def field_decl(self, meta, children):
        return FieldDecl(str(children[1]), children[0])

    def method_decl(self, meta, children):
        return_type = Type('void') if isinstance(children[0], Token) else children[0]
        params = tuple(p for p in children[2:-1] if p is not None)
        return Method(str(children[1]), params, return_type, children[-1])

    def param(self, meta, children):
        return Param(str(children[2]), children[1], final=children[0] is not None)

    def type(self, meta, children):
        return Type(str(children[0]), len(children) - 1)

    def block(self, meta, children):
        return tuple(children)

    def var_decl(self, meta, children):
        final, type_, name, init = children
        return VarDecl(type_, str(name), init, final=final is not None, line=_line(meta))

    def for_decl(self, meta, children):
        final, type_, name, init = children
        return VarDecl(type_, str(name), init, final=final is not None, line=_line(meta))

    def assign(self, meta, children):
        target, value = children
        if isinstance(target, FieldRef):
            return FieldAssign(target, value, line=_line(meta))
        if not isinstance(target, (VarRef, Index)):
            raise MimplSyntaxError('Invalid assignment target', _line(meta), getattr(meta, 'column', 0))
        return Assign(target, value, line=_line(meta))

    def call_stmt(self, meta, children):
        return CallStmt(children[0], line=_line(meta))

    def if_stmt(self, meta, children):
        cond, then, orelse = children[1], children[2], children[3]
        if isinstance(orelse, If):
            orelse = (orelse,)
        return If(cond, then, orelse, line=_line(meta))

    def while_stmt(self, meta, children):
        return While(children[0], children[1], line=_line(meta))

    def for_stmt(self, meta, children):
        init, cond, update, body = children
        return For(init, cond, update, body, line=_line(meta))

    def return_stmt(self, meta, children):
        return Return(children[1], line=_line(meta))

    def print_stmt(self, meta, children):
        return Print(children[1], line=_line(meta))

    def write_stmt(self, meta, children):
        return Write(json.loads(children[1]), children[2], line=_line(meta))

    def block_stmt(self, meta, children):
        return Block(children[0], line=_line(meta))

    def _binary(self, alias, meta, children):
        return BinOp(BINARY_OPERATORS[alias], children[0], children[1], line=_line(meta))

    def or_(self, meta, children):
        return self._binary('or_', meta, children)

    def and_(self, meta, children):
        return self._binary('and_', meta, children)

    def eq(self, meta, children):
        return self._binary('eq', meta, children)

    def ne(self, meta, children):
        return self._binary('ne', meta, children)

    def lt(self, meta, children):
        return self._binary('lt', meta, children)

    def le(self, meta, children):
        return self._binary('le', meta, children)

    def gt(self, meta, children):
        return self._binary('gt', meta, children)

    def ge(self, meta, children):
        return self._binary('ge', meta, children)

    def add(self, meta, children):
        return self._binary('add', meta, children)

    def sub(self, meta, children):
        return self._binary('sub', meta, children)

    def mul(self, meta, children):
        return self._binary('mul', meta, children)

    def div(self, meta, children):
        return self._binary('div', meta, children)

    def mod(self, meta, children):
        return self._binary('mod', meta, children)

    def neg(self, meta, children):
        return UnOp('-', children[0], line=_line(meta))

    def not_(self, meta, children):
        return UnOp('!', children[0], line=_line(meta))

    def index(self, meta, children):
        return Index(children[0], children[1], line=_line(meta))

    def field(self, meta, children):
        return FieldRef(children[0], str(children[1]), line=_line(meta))

    def func_call(self, meta, children):
        return Call(str(children[0]), tuple(a for a in children[1:] if a is not None), line=_line(meta))

    def method_call(self, meta, children):
        return Call(str(children[1]), tuple(a for a in children[2:] if a is not None), receiver=children[0],
                    line=_line(meta))

    def int_lit(self, meta, children):
        return IntLit(int(children[0]))

    def str_lit(self, meta, children):
        return StrLit(json.loads(children[0]))

    def true_lit(self, meta, children):
        return BoolLit(True)

    def false_lit(self, meta, children):
        return BoolLit(False)

    def null_lit(self, meta, children):
        return NullLit()

    def this_ref(self, meta, children):
        return VarRef('this', line=children[0].line)

    def var_ref(self, meta, children):
        return VarRef(str(children[0]), line=children[0].line)

    def new_object(self, meta, children):
        return NewObject(str(children[1]), line=_line(meta))

    def new_array(self, meta, children):
        dims = len(children) - 2
        return NewArray(Type(str(children[1]), dims), children[2], line=_line(meta))

    def array_lit(self, meta, children):
        return ArrayLit(tuple(children), line=_line(meta))


def parse_raw(source: str) -> Program:
    """
    Parses MIMPL source text without resolving it.

    :param source: The source text.
    :return: The raw program tree.
    :raises MimplSyntaxError: If the text is not valid MIMPL.
    """
    try:
        tree = _parser.parse(source)
    except UnexpectedInput as e:
        raise MimplSyntaxError(f'Unexpected input: {source[e.pos_in_stream:e.pos_in_stream + 20]!r}'
                               if e.pos_in_stream is not None else 'Unexpected end of input',
                               e.line, e.column) from e
    try:
        return MimplBuilder().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, MimplSyntaxError):
            raise e.orig_exc from e
        raise
