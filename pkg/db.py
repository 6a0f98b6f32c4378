import logging
from contextlib import contextmanager
from typing import Iterable, Iterator

from sqlalchemy.engine import Engine
from sqlmodel import Session, SQLModel
from sqlmodel import create_engine as _create_engine

from models.report import LawRecord, LawRow

logger = logging.getLogger("database")


def generate_engine(url: str, verbose: bool = False) -> Engine:
    return _create_engine(url, echo=verbose)


@contextmanager
def get_session(engine: Engine) -> Iterator[Session]:
    with Session(engine) as session:
        yield session


def store_records(records: Iterable[LawRecord], url: str, run: str) -> int:
    "Appends the flat law records of one sweep to the law_records table, tagged with run"

    engine = generate_engine(url)
    SQLModel.metadata.create_all(engine)

    count = 0
    with get_session(engine) as session:
        for record in records:
            session.add(LawRow(**record.model_dump(), run=run))
            count += 1
        session.commit()

    logger.info(f"Stored {count} records of run {run} in {url}")
    return count
