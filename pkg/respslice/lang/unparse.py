# lang/unparse.py
"""
Pretty-prints syntax trees as MIMPL source text.
"""
import json

from .models import (Expr, IntLit, BoolLit, StrLit, NullLit, VarRef, FieldRef, Index, BinOp, UnOp, Call,
                     NewObject, NewArray, ArrayLit, Stmt, VarDecl, Assign, FieldAssign, If, While, For, Block,
                     Return, Print, Write, CallStmt, Method, ClassDecl, Program)

INDENT = '    '

PRECEDENCE = {'||': 1, '&&': 2, '==': 3, '!=': 3, '<': 4, '<=': 4, '>': 4, '>=': 4, '+': 5, '-': 5,
              '*': 6, '/': 6, '%': 6}
"""Binding strength of the binary operators. All of them are left associative."""


def unparse_expr(e: Expr) -> str:
    """
    :param e: The expression.
    :return: The source text of the expression with the parentheses its structure needs.
    """
    match e:
        case IntLit(value=v):
            return str(v)
        case BoolLit(value=v):
            return 'true' if v else 'false'
        case StrLit(value=v):
            return json.dumps(v)
        case NullLit():
            return 'null'
        case VarRef(name=name):
            return name
        case FieldRef(obj=obj, field=field):
            return f'{_operand(obj)}.{field}'
        case Index(array=array, index=index):
            return f'{_operand(array)}[{unparse_expr(index)}]'
        case BinOp(op=op, left=left, right=right):
            ls, rs = unparse_expr(left), unparse_expr(right)
            if isinstance(left, BinOp) and PRECEDENCE[left.op] < PRECEDENCE[op]:
                ls = f'({ls})'
            if isinstance(right, BinOp) and PRECEDENCE[right.op] <= PRECEDENCE[op]:
                rs = f'({rs})'
            return f'{ls} {op} {rs}'
        case UnOp(op=op, operand=operand):
            inner = unparse_expr(operand)
            return f'{op}({inner})' if isinstance(operand, BinOp) else f'{op}{inner}'
        case Call(name=name, args=args, receiver=receiver):
            arg_text = ', '.join(unparse_expr(a) for a in args)
            prefix = f'{_operand(receiver)}.' if receiver is not None else ''
            return f'{prefix}{name}({arg_text})'
        case NewObject(cls=cls):
            return f'new {cls}()'
        case NewArray(type=t, size=size):
            return f'new {t.name}[{unparse_expr(size)}]' + '[]' * (t.dims - 1)
        case ArrayLit(elements=elements):
            return '[' + ', '.join(unparse_expr(x) for x in elements) + ']'
    raise TypeError(f'Cannot unparse {e!r}')


def _operand(e: Expr) -> str:
    text = unparse_expr(e)
    return f'({text})' if isinstance(e, (BinOp, UnOp)) else text


def _simple(s: Stmt) -> str:
    match s:
        case VarDecl(type=t, name=name, init=init, final=final):
            text = ('final ' if final else '') + f'{t} {name}'
            return text + (f' = {unparse_expr(init)}' if init is not None else '')
        case Assign(target=target, value=value) | FieldAssign(target=target, value=value):
            return f'{unparse_expr(target)} = {unparse_expr(value)}'
    raise TypeError(f'{s!r} is not a simple statement')


def unparse_stmts(stmts: tuple[Stmt, ...], depth: int = 1, numbered: bool = False) -> list[str]:
    """
    :param stmts: A statement list.
    :param depth: The indentation depth of the list.
    :param numbered: If true, every statement line ends with a comment holding its id.
    :return: The source lines.
    """
    pad = INDENT * depth
    lines = []
    for s in stmts:
        tag = f'  // {s.id}' if numbered else ''
        match s:
            case VarDecl() | Assign() | FieldAssign():
                lines.append(f'{pad}{_simple(s)};{tag}')
            case If(cond=cond, then=then, orelse=orelse):
                lines.append(f'{pad}if ({unparse_expr(cond)}) {{{tag}')
                lines += unparse_stmts(then, depth + 1, numbered)
                if orelse is not None:
                    lines.append(f'{pad}}} else {{')
                    lines += unparse_stmts(orelse, depth + 1, numbered)
                lines.append(f'{pad}}}')
            case While(cond=cond, body=body):
                lines.append(f'{pad}while ({unparse_expr(cond)}) {{{tag}')
                lines += unparse_stmts(body, depth + 1, numbered)
                lines.append(f'{pad}}}')
            case For(init=init, cond=cond, update=update, body=body):
                init_text = _simple(init) if init is not None else ''
                update_text = _simple(update) if update is not None else ''
                lines.append(f'{pad}for ({init_text}; {unparse_expr(cond)}; {update_text}) {{{tag}')
                lines += unparse_stmts(body, depth + 1, numbered)
                lines.append(f'{pad}}}')
            case Block(body=body):
                lines.append(f'{pad}{{{tag}')
                lines += unparse_stmts(body, depth + 1, numbered)
                lines.append(f'{pad}}}')
            case Return(value=value):
                lines.append(f'{pad}return' + (f' {unparse_expr(value)}' if value is not None else '') + f';{tag}')
            case Print(value=value):
                lines.append(f'{pad}print({unparse_expr(value)});{tag}')
            case Write(file=file, value=value):
                lines.append(f'{pad}write({json.dumps(file)}, {unparse_expr(value)});{tag}')
            case CallStmt(call=call):
                lines.append(f'{pad}{unparse_expr(call)};{tag}')
            case _:
                raise TypeError(f'Cannot unparse {s!r}')
    return lines


def unparse_method(m: Method, depth: int = 0, numbered: bool = False) -> list[str]:
    """
    :param m: The method.
    :param depth: The indentation depth of the signature.
    :param numbered: If true, statement ids are emitted as comments.
    :return: The source lines of the method.
    """
    params = ', '.join(('final ' if p.final else '') + f'{p.type} {p.name}' for p in m.params)
    pad = INDENT * depth
    return ([f'{pad}{m.return_type} {m.name}({params}) {{'] + unparse_stmts(m.body, depth + 1, numbered)
            + [f'{pad}}}'])


def _unparse_class(c: ClassDecl, numbered: bool) -> list[str]:
    lines = [f'class {c.name} {{']
    lines += [f'{INDENT}{f.type} {f.name};' for f in c.fields]
    for m in c.methods:
        lines.append('')
        lines += unparse_method(m, 1, numbered)
    return lines + ['}']


def unparse(program: Program, numbered: bool = False) -> str:
    """
    Emits MIMPL text such that parsing it yields a program structurally equal to program.

    :param program: A resolved or raw program.
    :param numbered: If true, statement ids are emitted as trailing comments.
    :return: The source text.
    """
    parts = []
    if program.globals:
        parts.append('\n'.join(_simple(g) + ';' for g in program.globals))
    parts += ['\n'.join(_unparse_class(c, numbered)) for c in program.classes]
    parts += ['\n'.join(unparse_method(m, 0, numbered)) for m in program.methods]
    return '\n\n'.join(parts) + '\n'
