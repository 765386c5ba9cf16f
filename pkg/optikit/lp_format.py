"""LP text export/import for external solvers and debugging.

The dialect is the common CPLEX-style subset: an objective section, a
``Subject To`` block, a ``Bounds`` block listing every variable in column
order, and a ``Binaries`` block.  Numbers are written with ``repr`` so a
write/read round trip is exact.
"""
import math
import re

from influence_blocking.exceptions import ParameterError

from .model import BINARY, CONTINUOUS, MAXIMIZE, MINIMIZE, MilpModel

_NAME = re.compile(r'^[A-Za-z_][A-Za-z0-9_\[\]().,]*$')
_SENSES = {'<=': '<=', '=<': '<=', '>=': '>=', '=>': '>=', '=': '='}
_SECTIONS = {
    'maximize': 'max', 'maximise': 'max', 'max': 'max',
    'minimize': 'min', 'minimise': 'min', 'min': 'min',
    'subject to': 'rows', 'such that': 'rows', 'st': 'rows', 's.t.': 'rows',
    'bounds': 'bounds',
    'binaries': 'binaries', 'binary': 'binaries', 'bin': 'binaries',
    'end': 'end',
}


def _column_names(model):
    names = [v.name for v in model.variables]
    if len(set(names)) == len(names) and all(_NAME.match(name) for name in names):
        return names
    return [f'x{j}' for j in range(model.num_vars)]


def _number(value):
    if math.isinf(value):
        return '+inf' if value > 0 else '-inf'
    return repr(float(value))


def _terms(coeffs, names):
    parts = []
    for j in sorted(coeffs):
        value = coeffs[j]
        parts.append(f'{"-" if value < 0 else "+"} {_number(abs(value))} {names[j]}')
    return ' '.join(parts)


def write_lp(model, stream):
    names = _column_names(model)
    stream.write(f'\\ {model.name}\n')
    stream.write('Maximize\n' if model.sense == MAXIMIZE else 'Minimize\n')
    stream.write(f' obj: {_terms(model.objective, names)}\n')
    stream.write('Subject To\n')
    for r, row in enumerate(model.constraints):
        stream.write(f' r{r}: {_terms(row.coeffs, names)} {row.sense} {_number(row.rhs)}\n')
    stream.write('Bounds\n')
    for name, variable in zip(names, model.variables):
        stream.write(f' {_number(variable.lb)} <= {name} <= {_number(variable.ub)}\n')
    binaries = [name for name, v in zip(names, model.variables) if v.kind == BINARY]
    if binaries:
        stream.write('Binaries\n')
        stream.write(' ' + ' '.join(binaries) + '\n')
    stream.write('End\n')


def _parse_float(token, line_number):
    try:
        return float(token.replace('+inf', 'inf'))
    except ValueError:
        raise ParameterError(f'LP line {line_number}: expected a number, got {token!r}') from None


def _parse_terms(tokens, columns, line_number):
    coeffs = {}
    sign, coefficient = 1.0, None
    for token in tokens:
        if token in ('+', '-'):
            sign = 1.0 if token == '+' else -1.0
        elif coefficient is None and re.match(r'^[0-9.]', token):
            coefficient = _parse_float(token, line_number)
        else:
            if token not in columns:
                raise ParameterError(f'LP line {line_number}: unknown variable {token!r}')
            j = columns[token]
            coeffs[j] = coeffs.get(j, 0.0) + sign * (1.0 if coefficient is None else coefficient)
            sign, coefficient = 1.0, None
    return coeffs


def read_lp(stream):
    """Parse a model written by :func:`write_lp`.

    Variables are created in the order of the ``Bounds`` block, so the
    file's column order survives the round trip.
    """
    raw_lines = list(stream)
    name = 'model'
    if raw_lines and raw_lines[0].lstrip().startswith('\\'):
        name = raw_lines[0].lstrip()[1:].strip() or name
    lines = [(k, raw.split('\\', 1)[0].strip()) for k, raw in enumerate(raw_lines, start=1)]

    sections = {'max': [], 'min': [], 'rows': [], 'bounds': [], 'binaries': []}
    sense, current = None, None
    for line_number, text in lines:
        if not text:
            continue
        key = text.lower()
        if key in _SECTIONS:
            current = _SECTIONS[key]
            if current in ('max', 'min'):
                sense = current
            if current == 'end':
                break
            continue
        if current is None:
            raise ParameterError(f'LP line {line_number}: content before the objective section')
        sections[current].append((line_number, text))
    if sense is None:
        raise ParameterError('LP file has no objective section')

    model = MilpModel(name=name, sense=MAXIMIZE if sense == 'max' else MINIMIZE)
    binaries = {token for _, text in sections['binaries'] for token in text.split()}
    columns = {}
    for line_number, text in sections['bounds']:
        tokens = text.split()
        if len(tokens) != 5 or tokens[1] != '<=' or tokens[3] != '<=':
            raise ParameterError(f'LP line {line_number}: expected "lb <= name <= ub"')
        var_name = tokens[2]
        kind = BINARY if var_name in binaries else CONTINUOUS
        columns[var_name] = model.add_var(
            var_name,
            lb=_parse_float(tokens[0], line_number),
            ub=_parse_float(tokens[4], line_number),
            kind=kind,
        )

    for line_number, text in sections[sense]:
        _, _, body = text.partition(':')
        model.set_objective(_parse_terms(body.split(), columns, line_number), sense=model.sense)

    for line_number, text in sections['rows']:
        label, _, body = text.partition(':')
        tokens = body.split()
        if len(tokens) < 2 or tokens[-2] not in _SENSES:
            raise ParameterError(f'LP line {line_number}: row needs "<terms> <sense> <rhs>"')
        model.add_constraint(
            _parse_terms(tokens[:-2], columns, line_number),
            _SENSES[tokens[-2]],
            _parse_float(tokens[-1], line_number),
            name=label.strip(),
        )
    return model
