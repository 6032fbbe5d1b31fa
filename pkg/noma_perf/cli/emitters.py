import csv
import io

from rest_framework.renderers import JSONRenderer

from .serializers import ResultRowSerializer

FORMATS = ('csv', 'json')
HEADER = (
    'axis', 'axis_value', 'engine', 'stream', 'user_order',
    'value', 'ci_lo', 'ci_hi', 'err_est',
)


def _csv_cell(value):
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value)
    return value


def render(rows, fmt):
    """Text of a result table; identical tables give identical text."""
    data = ResultRowSerializer(rows, many=True).data
    if fmt == 'json':
        return JSONRenderer().render(data).decode('utf-8') + '\n'
    if fmt != 'csv':
        raise ValueError(f'unknown format {fmt!r}')
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(HEADER)
    for row in data:
        writer.writerow(_csv_cell(row[name]) for name in HEADER)
    return buffer.getvalue()


def emit(rows, fmt, path):
    text = render(rows, fmt)
    with open(path, 'w', encoding='utf-8', newline='') as target:
        target.write(text)
    return text
