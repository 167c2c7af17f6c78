# _testing/strategies.py
"""
Hypothesis strategies generating valid MIMPL programs.

Generated methods take two int parameters. Locals are declared at the top level only, nested statement lists
assign and print them. Loops run a fixed number of times: for loops over their own counter, while loops over a
counter declared right before them and incremented as the last statement of their body. So every generated
program type-checks and terminates.
"""
from hypothesis import strategies as st

PARAMS = ('a', 'b')


@st.composite
def expressions(draw, names: list[str], depth: int = 0) -> str:
    """
    :param names: The int variables in scope.
    :param depth: The current nesting depth.
    :return: An int expression over the variables and small literals.
    """
    if depth >= 2 or draw(st.booleans()):
        if names and draw(st.booleans()):
            return draw(st.sampled_from(names))
        return str(draw(st.integers(0, 9)))
    op = draw(st.sampled_from(['+', '-', '*']))
    return f'({draw(expressions(names, depth + 1))} {op} {draw(expressions(names, depth + 1))})'


@st.composite
def conditions(draw, names: list[str]) -> str:
    op = draw(st.sampled_from(['<', '<=', '>', '>=', '==', '!=']))
    return f'{draw(expressions(names))} {op} {draw(expressions(names))}'


@st.composite
def nested_statements(draw, names: list[str], locals_: list[str], depth: int, loops: list[int]) -> list[str]:
    lines = []
    for _ in range(draw(st.integers(1, 3))):
        kind = draw(st.sampled_from(['assign', 'print', 'if', 'for', 'while'] if depth < 2 and locals_ else
                                    ['assign', 'print'] if locals_ else ['print']))
        if kind == 'assign':
            lines.append(f'{draw(st.sampled_from(locals_))} = {draw(expressions(names))};')
        elif kind == 'print':
            lines.append(f'print({draw(expressions(names))});')
        elif kind == 'if':
            then = draw(nested_statements(names, locals_, depth + 1, loops))
            text = f'if ({draw(conditions(names))}) {{ {" ".join(then)} }}'
            if draw(st.booleans()):
                orelse = draw(nested_statements(names, locals_, depth + 1, loops))
                text += f' else {{ {" ".join(orelse)} }}'
            lines.append(text)
        elif kind == 'while':
            loops[0] += 1
            counter = f'w{loops[0]}'
            body = draw(nested_statements(names + [counter], locals_, depth + 1, loops))
            lines.append(f'int {counter} = 0;')
            lines.append(f'while ({counter} < {draw(st.integers(0, 3))}) '
                         f'{{ {" ".join(body)} {counter} = {counter} + 1; }}')
        else:
            loops[0] += 1
            counter = f'k{loops[0]}'
            body = draw(nested_statements(names + [counter], locals_, depth + 1, loops))
            lines.append(f'for (int {counter} = 0; {counter} < {draw(st.integers(0, 3))}; {counter} = {counter} + 1) '
                         f'{{ {" ".join(body)} }}')
    return lines


@st.composite
def programs(draw, max_statements: int = 40) -> str:
    """
    :param max_statements: The maximum number of top level statements.
    :return: The source text of a program with one method gen(int a, int b).
    """
    names = list(PARAMS)
    locals_ = []
    loops = [0]
    lines = []
    for _ in range(draw(st.integers(1, max_statements))):
        kind = draw(st.sampled_from(['declare', 'declare', 'nested', 'print']))
        if kind == 'declare':
            name = f'v{len(locals_)}'
            lines.append(f'int {name} = {draw(expressions(names))};')
            locals_.append(name)
            names.append(name)
        elif kind == 'nested':
            lines += draw(nested_statements(names, locals_, 0, loops))
        else:
            lines.append(f'print({draw(expressions(names))});')
    lines.append(f'print({draw(expressions(names))});')
    body = '\n    '.join(lines)
    return f'void gen(int a, int b) {{\n    {body}\n}}\n'
