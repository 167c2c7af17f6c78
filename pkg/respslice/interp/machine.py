# interp/machine.py
"""
A tree walking interpreter for resolved MIMPL programs.

Every executed statement and every loop test consumes one unit of fuel. A run that runs out of fuel ends with a
timeout event, a run that fails (index out of bounds, division by zero, null access) ends with an error event.
"""
import copy
import logging
import random

from ..lang import (Program, Method, Type, Expr, IntLit, BoolLit, StrLit, NullLit, VarRef, FieldRef, Index, BinOp,
                    UnOp, Call, NewObject, NewArray, ArrayLit, Stmt, VarDecl, Assign, FieldAssign, If, While, For,
                    Block, Return, Print, Write, CallStmt, PRIMITIVES)
from ..settings import DEFAULT_FUEL, RANDOM_INPUTS
from .models import MimplObject, TraceEvent, OutputTrace, EquivalenceResult, render

STRING_ALPHABET = 'abc'
"""The characters of random strings."""


class FuelExhausted(Exception):
    """The step budget of a run is used up."""


class MimplRuntimeError(Exception):
    """A MIMPL program failed at run time."""


class _Return(Exception):
    def __init__(self, value):
        self.value = value


def default_value(t: Type):
    """
    :param t: A MIMPL type.
    :return: The initial value of fields and array elements of the type.
    """
    if t.dims == 0 and t.name == 'int':
        return 0
    if t.dims == 0 and t.name == 'bool':
        return False
    if t.dims == 0 and t.name == 'string':
        return ''
    return None


def _divide(a: int, b: int, op: str) -> int:
    if b == 0:
        raise MimplRuntimeError('division by zero')
    q = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        q = -q
    return q if op == '/' else a - b * q


class Interpreter:
    """
    Runs the methods of one program and records what they output.
    """
    program: Program
    fuel: int
    """The remaining step budget."""
    globals: dict[str, object]
    """Global name -> current value."""
    events: list[TraceEvent]

    def __init__(self, program: Program, fuel: int = DEFAULT_FUEL):
        if fuel <= 0:
            raise ValueError(f'fuel must be positive, but got {fuel}')
        self.program = program
        self.fuel = fuel
        self.globals = {}
        self.events = []

    def _step(self):
        self.fuel -= 1
        if self.fuel < 0:
            raise FuelExhausted()

    def run(self, name: str, args: tuple) -> OutputTrace:
        """
        Initialises the globals and runs a method.

        :param name: The qualified name of the method. Class methods run on a fresh object.
        :param args: The argument values.
        :return: The trace of the run.
        :raises KeyError: If the program has no such method.
        :raises ValueError: If the number of arguments does not match.
        """
        method = self.program.method(name)
        if len(args) != len(method.params):
            raise ValueError(f'"{name}" expects {len(method.params)} arguments, but got {len(args)}')
        self.events = []
        try:
            self.globals = {}
            for g in self.program.globals:
                self.globals[g.name] = self.eval(g.init, {}) if g.init is not None else default_value(g.type)
            receiver = self.new_object(method.owner) if method.owner is not None else None
            result = self.invoke(method, list(args), receiver)
        except FuelExhausted:
            self.events.append(TraceEvent('timeout'))
            return OutputTrace(tuple(self.events))
        except MimplRuntimeError as e:
            self.events.append(TraceEvent('error', str(e)))
            return OutputTrace(tuple(self.events))
        except RecursionError:
            self.events.append(TraceEvent('error', 'stack overflow'))
            return OutputTrace(tuple(self.events))
        for g, value in self.globals.items():
            self.events.append(TraceEvent('global-final-state', (g, render(value))))
        for p, value in zip(method.params, args):
            if p.type.is_reference:
                self.events.append(TraceEvent('param-final-state', (p.name, render(value))))
        if method.return_type.name != 'void':
            self.events.append(TraceEvent('return-value', render(result)))
        return OutputTrace(tuple(self.events))

    def new_object(self, cls: str) -> MimplObject:
        decl = self.program.class_decl(cls)
        return MimplObject(cls, {f.name: default_value(f.type) for f in decl.fields})

    def invoke(self, method: Method, args: list, receiver: MimplObject | None = None):
        frame = {p.symbol.key: a for p, a in zip(method.params, args)}
        if receiver is not None:
            frame['this'] = receiver
        try:
            self.execute_list(method.body, frame)
        except _Return as r:
            return r.value
        return None

    # statements

    def execute_list(self, stmts: tuple[Stmt, ...], frame: dict):
        for s in stmts:
            self.execute(s, frame)

    def execute(self, s: Stmt, frame: dict):
        self._step()
        match s:
            case VarDecl(init=init, symbol=symbol):
                if init is not None:
                    frame[symbol.key] = self.eval(init, frame)
            case Assign(target=target, value=value) | FieldAssign(target=target, value=value):
                self.store(target, self.eval(value, frame), frame)
            case If(cond=cond, then=then, orelse=orelse):
                if self.eval(cond, frame):
                    self.execute_list(then, frame)
                elif orelse is not None:
                    self.execute_list(orelse, frame)
            case While(cond=cond, body=body):
                while self.eval(cond, frame):
                    self.execute_list(body, frame)
                    self._step()
            case For(init=init, cond=cond, update=update, body=body):
                if init is not None:
                    self.execute_simple(init, frame)
                while self.eval(cond, frame):
                    self.execute_list(body, frame)
                    self._step()
                    if update is not None:
                        self.execute_simple(update, frame)
            case Block(body=body):
                self.execute_list(body, frame)
            case Return(value=value):
                raise _Return(self.eval(value, frame) if value is not None else None)
            case Print(value=value):
                self.events.append(TraceEvent('print', render(self.eval(value, frame))))
            case Write(file=file, value=value):
                self.events.append(TraceEvent('file-write', (file, render(self.eval(value, frame)))))
            case CallStmt(call=call):
                self.eval(call, frame)
            case _:
                raise MimplRuntimeError(f'cannot execute {s!r}')

    def execute_simple(self, s: Stmt, frame: dict):
        if isinstance(s, VarDecl):
            frame[s.symbol.key] = self.eval(s.init, frame) if s.init is not None else None
        else:
            self.store(s.target, self.eval(s.value, frame), frame)

    def store(self, target: Expr, value, frame: dict):
        match target:
            case VarRef(symbol=symbol):
                if symbol.kind == 'global':
                    self.globals[symbol.name] = value
                else:
                    frame[symbol.key] = value
            case FieldRef(obj=obj, field=field):
                o = self.eval(obj, frame)
                if o is None:
                    raise MimplRuntimeError(f'null access of field "{field}"')
                o.fields[field] = value
            case Index(array=array, index=index):
                a = self.eval(array, frame)
                i = self.eval(index, frame)
                self._check_index(a, i)
                a[i] = value

    @staticmethod
    def _check_index(a, i):
        if a is None:
            raise MimplRuntimeError('null array access')
        if not 0 <= i < len(a):
            raise MimplRuntimeError(f'index {i} out of bounds for length {len(a)}')

    # expressions

    def eval(self, e: Expr, frame: dict):
        match e:
            case IntLit(value=v) | BoolLit(value=v) | StrLit(value=v):
                return v
            case NullLit():
                return None
            case VarRef(symbol=symbol):
                if symbol.kind == 'global':
                    return self.globals[symbol.name]
                return frame[symbol.key]
            case FieldRef(obj=obj, field=field):
                o = self.eval(obj, frame)
                if o is None:
                    raise MimplRuntimeError(f'null access of field "{field}"')
                return o.fields[field]
            case Index(array=array, index=index):
                a = self.eval(array, frame)
                i = self.eval(index, frame)
                self._check_index(a, i)
                return a[i]
            case BinOp(op=op, left=left, right=right):
                return self.binop(op, self.eval(left, frame), self.eval(right, frame))
            case UnOp(op=op, operand=operand):
                v = self.eval(operand, frame)
                return -v if op == '-' else not v
            case Call():
                return self.call(e, frame)
            case NewObject(cls=cls):
                return self.new_object(cls)
            case NewArray(type=t, size=size):
                n = self.eval(size, frame)
                if n < 0:
                    raise MimplRuntimeError(f'negative array size {n}')
                return [default_value(t.element()) for _ in range(n)]
            case ArrayLit(elements=elements):
                return [self.eval(x, frame) for x in elements]
        raise MimplRuntimeError(f'cannot evaluate {e!r}')

    @staticmethod
    def binop(op: str, a, b):
        match op:
            case '+':
                if isinstance(a, str) or isinstance(b, str):
                    return render(a) + render(b)
                return a + b
            case '-':
                return a - b
            case '*':
                return a * b
            case '/' | '%':
                return _divide(a, b, op)
            case '<':
                return a < b
            case '<=':
                return a <= b
            case '>':
                return a > b
            case '>=':
                return a >= b
            case '&&':
                return a and b
            case '||':
                return a or b
            case '==':
                return a is b if isinstance(a, (list, MimplObject)) else a == b
            case '!=':
                return a is not b if isinstance(a, (list, MimplObject)) else a != b
        raise MimplRuntimeError(f'unknown operator {op}')

    def call(self, call: Call, frame: dict):
        args = [self.eval(a, frame) for a in call.args]
        if call.receiver is None and call.target == 'length':
            if args[0] is None:
                raise MimplRuntimeError('length of null')
            return len(args[0])
        if call.receiver is None and call.target == 'abs':
            return abs(args[0])
        receiver = None
        if call.receiver is not None:
            receiver = self.eval(call.receiver, frame)
            if receiver is None:
                raise MimplRuntimeError(f'null receiver of "{call.name}"')
        self._step()
        return self.invoke(self.program.method(call.target), args, receiver)


def run(program: Program, method: str, args: tuple, fuel: int = DEFAULT_FUEL) -> OutputTrace:
    """
    Runs a method of a program.

    :param program: A resolved program.
    :param method: The qualified name of the method.
    :param args: The argument values: int, bool, str, lists for arrays, MimplObject or None for objects. Arrays and
        objects are changed in place by the run.
    :param fuel: The step budget.
    :return: The output trace.
    """
    return Interpreter(program, fuel).run(method, args)


def random_value(t: Type, rng: random.Random, program: Program | None = None, depth: int = 0):
    """
    :param t: A parameter type.
    :param rng: The random number generator.
    :param program: The program declaring the classes of object types.
    :param depth: The nesting depth of the value, objects below depth two are null.
    :return: A random value of the type: ints in [-100, 100], arrays of length 0 to 8, short strings.
    """
    if t.is_array:
        return [random_value(t.element(), rng, program, depth + 1) for _ in range(rng.randint(0, 8))]
    if t.name == 'int':
        return rng.randint(-100, 100)
    if t.name == 'bool':
        return rng.random() < 0.5
    if t.name == 'string':
        return ''.join(rng.choice(STRING_ALPHABET) for _ in range(rng.randint(0, 3)))
    decl = program.class_decl(t.name) if program is not None else None
    if decl is None or depth > 1:
        return None
    return MimplObject(t.name, {f.name: random_value(f.type, rng, program, depth + 1) if f.type.name in PRIMITIVES
                                else None for f in decl.fields})


def random_args(method: Method, rng: random.Random, program: Program | None = None) -> tuple:
    """
    :param method: A method.
    :param rng: A seeded random number generator.
    :param program: The program declaring the classes of object parameters.
    :return: Random arguments matching the signature of the method.
    """
    return tuple(random_value(p.type, rng, program) for p in method.params)


def random_inputs(method: Method, seed: int, count: int = RANDOM_INPUTS, program: Program | None = None) \
        -> list[tuple]:
    """
    :return: count argument tuples drawn from a generator seeded with seed.
    """
    rng = random.Random(seed)
    return [random_args(method, rng, program) for _ in range(count)]


def equivalent(p1: Program, p2: Program, method: str, inputs: list[tuple],
               fuel: int = DEFAULT_FUEL) -> EquivalenceResult:
    """
    Runs a method of two programs on the same inputs and compares the traces. Every run works on its own copy of
    the arguments.

    :param p1: The original program.
    :param p2: The changed program.
    :param method: The qualified name of the method in both programs.
    :param inputs: Argument tuples.
    :param fuel: The step budget of every run.
    :return: The comparison result, with the first divergence if there is one.
    """
    for args in inputs:
        t1 = run(p1, method, copy.deepcopy(args), fuel)
        t2 = run(p2, method, copy.deepcopy(args), fuel)
        if t1 == t2 or (t1.timed_out and t2.timed_out):
            continue
        position = next((i for i, (a, b) in enumerate(zip(t1.events, t2.events)) if a != b),
                        min(len(t1), len(t2)))
        expected = t1.events[position] if position < len(t1) else None
        actual = t2.events[position] if position < len(t2) else None
        logging.info(f'Traces of "{method}" differ at event {position}.')
        return EquivalenceResult(False, len(inputs), tuple(render(a) for a in args), position, expected, actual)
    return EquivalenceResult(True, len(inputs))
