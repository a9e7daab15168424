"""
Catalog Files
Comma-separated catalogs with an id column and optional # comment lines
"""

import csv
import logging
import math
from io import StringIO
from pathlib import Path
from typing import Iterable, List, Optional, Union

from core.exceptions import CatalogIOError, DuplicateId, ParseError, RaggedRow
from core.system_models import Catalog, ComponentTuple

logger = logging.getLogger(__name__)

ID_COLUMN = "id"
PathLike = Union[str, Path]


def format_value(value: float) -> str:
    """Shortest text that parses back to the same float; integral values print without '.0'"""
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _data_lines(handle: Iterable[str]) -> Iterable[tuple]:
    """(file line number, text) of every non-blank, non-comment line"""
    for number, line in enumerate(handle, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, line


def read_comments(path: PathLike) -> List[str]:
    """Leading '#' lines of a catalog, without the marker"""
    comments = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith("#"):
                break
            comments.append(line[1:].strip())
    return comments


def load_catalog(path: PathLike, variable_name: Optional[str] = None) -> Catalog:
    """
    Load a catalog file

    Args:
        path: CSV file whose header starts with 'id'
        variable_name: Variable owning the catalog (default: file stem)

    Returns:
        Catalog with rows in file order

    Raises:
        CatalogIOError: Missing file, missing header or id column
        ParseError: A cell is not a finite real
        DuplicateId: Two rows share an id
        RaggedRow: A row has the wrong number of cells
    """
    path = Path(path)
    if not path.exists():
        raise CatalogIOError(f"Catalog file not found: {path}")
    name = variable_name or path.stem

    with open(path, "r", encoding="utf-8", newline="") as handle:
        numbered = list(_data_lines(handle))
    if not numbered:
        raise CatalogIOError(f"{path}: missing header row")

    rows = list(csv.reader(line for _, line in numbered))
    header = [cell.strip() for cell in rows[0]]
    if not header or header[0] != ID_COLUMN:
        raise CatalogIOError(f"{path}: first column must be '{ID_COLUMN}'")
    properties = header[1:]

    components: List[ComponentTuple] = []
    seen = set()
    for (line_number, _), cells in zip(numbered[1:], rows[1:]):
        if len(cells) != len(header):
            raise RaggedRow(str(path), line_number, len(header), len(cells))
        component_id = cells[0].strip()
        if component_id in seen:
            raise DuplicateId(str(path), component_id, line_number)
        seen.add(component_id)

        values = []
        for column, cell in zip(properties, cells[1:]):
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(str(path), line_number, column, cell) from None
            if not math.isfinite(value):
                raise ParseError(str(path), line_number, column, cell)
            values.append(value)
        components.append(ComponentTuple(component_id=component_id, values=tuple(values)))

    logger.debug(f"Loaded catalog '{name}' from {path}: {len(components)} components")
    try:
        return Catalog(variable_name=name, property_names=properties, components=components)
    except ValueError as e:
        raise CatalogIOError(f"{path}: {e}") from e


def catalog_to_csv(catalog: Catalog, comments: Iterable[str] = ()) -> str:
    """Render a catalog in file format"""
    output = StringIO()
    for comment in comments:
        output.write(f"# {comment}\n")
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow([ID_COLUMN] + list(catalog.property_names))
    for component in catalog.components:
        writer.writerow([component.component_id] + [format_value(v) for v in component.values])
    return output.getvalue()


def write_catalog(catalog: Catalog, path: PathLike, comments: Iterable[str] = ()) -> Path:
    """
    Write a catalog file

    Args:
        catalog: Catalog to write
        path: Target file
        comments: Lines written as '# ...' before the header

    Returns:
        Path written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(catalog_to_csv(catalog, comments))
    logger.debug(f"Wrote catalog '{catalog.variable_name}' to {path}")
    return path
