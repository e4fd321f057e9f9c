"""
cli/output.py

Output documents for the command line: a fixed-field record serialized as
JSON or as CSV. Integers are always written as decimal strings.
"""

import io
import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, TextIO

import pandas as pd

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

SUBJECTS = ("basis", "reduce", "boundary", "homology", "action", "monodromy", "verify")
FORMATS = ("json", "csv")


@dataclass
class OutputDocument:
    """One command result. Field order is the serialization order."""

    n: int
    subject: str
    convention: str
    row_labels: List[str] = field(default_factory=list)
    column_labels: List[str] = field(default_factory=list)
    payload: List[List[str]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.subject not in SUBJECTS:
            raise ValueError(f"Unknown subject {self.subject!r}")
        if len(self.payload) != len(self.row_labels):
            raise ValueError(f"{len(self.payload)} payload rows for {len(self.row_labels)} labels")
        for r, row in enumerate(self.payload):
            if len(row) != len(self.column_labels):
                raise ValueError(f"Payload row {r} has {len(row)} entries, expected {len(self.column_labels)}")

    def to_dict(self) -> Dict:
        return asdict(self)


def decimal_rows(matrix: Iterable[Iterable[int]]) -> List[List[str]]:
    """Matrix of ints as rows of decimal strings."""
    return [[str(int(v)) for v in row] for row in matrix]


def to_json(doc: OutputDocument) -> str:
    return json.dumps(doc.to_dict(), indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> OutputDocument:
    """
    Parse a document written by to_json.

    Raises:
        ValueError: If the text is not a valid document
    """
    try:
        return OutputDocument(**json.loads(text))
    except (TypeError, json.JSONDecodeError) as e:
        raise ValueError(f"Not an output document: {e}") from e


def to_csv(doc: OutputDocument) -> str:
    """
    Payload as a CSV table, one row per row label. Header comment lines carry
    n, subject, convention and notes.
    """
    df = pd.DataFrame(doc.payload, columns=doc.column_labels, dtype=str)
    df.insert(0, "label", doc.row_labels)

    buffer = io.StringIO()
    buffer.write(f"# n={doc.n}\n# subject={doc.subject}\n# convention={doc.convention}\n")
    for note in doc.notes:
        buffer.write(f"# {note}\n")
    df.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def read_csv_payload(text: str) -> List[List[str]]:
    """Payload rows of a CSV produced by to_csv."""
    df = pd.read_csv(io.StringIO(text), comment="#", dtype=str, keep_default_na=False)
    return df.drop(columns=["label"]).values.tolist()


def write_document(doc: OutputDocument, fmt: str, stream: TextIO) -> None:
    """
    Serialize a document to a text stream.

    Args:
        doc: Document to write
        fmt: "json" or "csv"
        stream: Destination, normally stdout

    Raises:
        ValueError: On an unknown format
    """
    if fmt == "json":
        stream.write(to_json(doc))
    elif fmt == "csv":
        stream.write(to_csv(doc))
    else:
        raise ValueError(f"Unknown output format {fmt!r}")
    logger.debug(f"Wrote {doc.subject} document for n={doc.n} as {fmt}")
