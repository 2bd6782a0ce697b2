"""
Formats texte (matrices, tables de vérité, énumérateurs) et export CSV
"""
import json
import re
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.error_handler import MatrixFormatError, ValidationError, ValidationManager
from src.gf2 import BitMatrix
from src.logger import get_logger

logger = get_logger('utils')

PathLike = Union[str, Path]


def parse_matrix_text(text: str) -> BitMatrix:
    """Lit le format matrice: une ligne '0'/'1' par rangée, '#' pour les commentaires"""
    rows: List[str] = []
    width = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        for col_no, ch in enumerate(line, start=1):
            if ch not in '01':
                raise MatrixFormatError(f"unexpected character {ch!r}", line=line_no, column=col_no)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise MatrixFormatError(
                f"row has {len(line)} columns, expected {width}",
                line=line_no, column=min(len(line), width) + 1
            )
        rows.append(line)

    if not rows:
        raise MatrixFormatError("no matrix rows found")

    bits = np.array([[ch == '1' for ch in row] for row in rows], dtype=np.uint8)
    return BitMatrix.from_bits(bits)


def read_matrix_file(path: PathLike) -> BitMatrix:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ValidationError(f"Cannot read matrix file {path}: {e}")
    return parse_matrix_text(text)


def format_matrix_text(M: BitMatrix, comment: str = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.extend(M.to_strings())
    return '\n'.join(lines) + '\n'


def write_matrix_file(path: PathLike, M: BitMatrix, comment: str = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_matrix_text(M, comment), encoding='utf-8')
    return path


def parse_truth_table_text(text: str) -> np.ndarray:
    """Une seule ligne de 2^m caractères '0'/'1'"""
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.strip().startswith('#')]
    if len(lines) != 1:
        raise MatrixFormatError(f"truth table must be a single line, found {len(lines)}")
    line = lines[0]
    for col_no, ch in enumerate(line, start=1):
        if ch not in '01':
            raise MatrixFormatError(f"unexpected character {ch!r}", line=1, column=col_no)
    size = len(line)
    if size < 2 or size & (size - 1):
        raise MatrixFormatError(f"truth table length {size} is not a power of two")
    return np.array([ch == '1' for ch in line], dtype=np.uint8)


def read_truth_table_file(path: PathLike) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ValidationError(f"Cannot read truth table file {path}: {e}")
    return parse_truth_table_text(text)


def format_enumerator(terms: Iterable[Tuple[int, int]]) -> str:
    """[(0,1),(4,3),(10,4)] -> '1+3z^4+4z^10'"""
    parts = []
    for w, count in sorted(terms):
        if count == 0:
            continue
        if w == 0:
            parts.append(str(count))
        elif count == 1:
            parts.append(f"z^{w}")
        else:
            parts.append(f"{count}z^{w}")
    return '+'.join(parts) if parts else '0'


_TERM_RE = re.compile(r'^(\d*)(?:\*?z(?:\^(\d+))?)?$')


def parse_enumerator(text: str) -> List[Tuple[int, int]]:
    """Lit un énumérateur imprimé ('1+84z^{118} + 36 z^{122}') en termes (w, A_w) triés"""
    cleaned = re.sub(r'[\s{}$]', '', text)
    if not cleaned:
        raise ValidationError("Empty weight enumerator")

    totals: Dict[int, int] = {}
    for term in cleaned.split('+'):
        match = _TERM_RE.match(term)
        if not term or not match or (not match.group(1) and 'z' not in term):
            raise ValidationError(f"Invalid enumerator term: {term!r}")
        coefficient, exponent = match.group(1), match.group(2)
        count = ValidationManager.parse_enumerator_count(coefficient or 1)
        if 'z' in term:
            w = int(exponent) if exponent is not None else 1
        else:
            w = 0
        totals[w] = totals.get(w, 0) + count

    return sorted((w, a) for w, a in totals.items() if a)


def dumps_json(payload: Any) -> str:
    """JSON stable (ordre des clés préservé, indentation fixe)"""
    return json.dumps(payload, indent=2, ensure_ascii=False)


def export_verification_to_csv(rows: Sequence[Dict[str, Any]], filename: PathLike = None) -> str:
    """Exporte le tableau de vérification en CSV"""
    if not rows:
        return None

    df = pd.DataFrame(list(rows))

    if filename is None:
        filename = "verification.csv"

    path = Path(filename)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, encoding='utf-8')
    logger.info(f"Verification table exported to {path}")
    return str(path)


def format_duration(seconds: float) -> str:
    """Formate une durée pour l'affichage"""
    if seconds is None:
        return "N/A"
    if seconds < 1:
        return f"{seconds * 1000:.0f} ms"
    return f"{seconds:.2f} s"
