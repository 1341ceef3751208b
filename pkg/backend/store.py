"""
SQLite result store for solve outcomes and sweep records.
Rows are keyed by the canonical sequence string; payloads are the codec's JSON.
"""
import logging
from typing import Iterable, List, Optional

import aiosqlite

from backend.codec import encode
from backend.models import SolveOutcome, SolveStatus, SweepRecord

logger = logging.getLogger(__name__)

DEFAULT_DB = "backend/results.db"


async def initialize_store(db_path: str = DEFAULT_DB):
    """Create the outcome and sweep tables if they don't exist."""
    async with aiosqlite.connect(db_path) as db:
        await db.execute("""
            CREATE TABLE IF NOT EXISTS solve_outcomes (
                canonical TEXT PRIMARY KEY,
                k INTEGER,
                n INTEGER,
                status TEXT,
                payload TEXT,
                updated_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        """)
        await db.execute("""
            CREATE TABLE IF NOT EXISTS sweep_records (
                canonical TEXT PRIMARY KEY,
                k INTEGER,
                n INTEGER,
                seq_index INTEGER,
                status TEXT,
                payload TEXT,
                updated_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        """)
        await db.commit()


async def save_outcome(outcome: SolveOutcome, db_path: str = DEFAULT_DB) -> str:
    """
    Store a solve outcome. Budget-exceeded outcomes are not stored.

    Returns:
        The canonical sequence string used as the key
    """
    key = outcome.sequence.canonical()
    if outcome.status == SolveStatus.BUDGET_EXCEEDED:
        logger.debug("not caching %s: budget exceeded", key)
        return key
    async with aiosqlite.connect(db_path) as db:
        await db.execute("""
            INSERT OR REPLACE INTO solve_outcomes (canonical, k, n, status, payload, updated_at)
            VALUES (?, ?, ?, ?, ?, CURRENT_TIMESTAMP)
        """, (key, outcome.sequence.k, outcome.sequence.n, outcome.status.value, encode(outcome)))
        await db.commit()
    return key


async def load_outcome(canonical: str, db_path: str = DEFAULT_DB) -> Optional[SolveOutcome]:
    async with aiosqlite.connect(db_path) as db:
        cursor = await db.execute("SELECT payload FROM solve_outcomes WHERE canonical = ?", (canonical,))
        row = await cursor.fetchone()
    return SolveOutcome.model_validate_json(row[0]) if row else None


async def save_records(records: Iterable[SweepRecord], db_path: str = DEFAULT_DB) -> int:
    rows = [
        (r.sequence.canonical(), r.sequence.k, r.sequence.n, r.index, r.status.value, encode(r))
        for r in records
    ]
    async with aiosqlite.connect(db_path) as db:
        await db.executemany("""
            INSERT OR REPLACE INTO sweep_records (canonical, k, n, seq_index, status, payload, updated_at)
            VALUES (?, ?, ?, ?, ?, ?, CURRENT_TIMESTAMP)
        """, rows)
        await db.commit()
    logger.info("stored %d sweep records in %s", len(rows), db_path)
    return len(rows)


async def load_records(k: int, n: int, db_path: str = DEFAULT_DB) -> List[SweepRecord]:
    """Stored records for (k, n) ordered by sequence index."""
    async with aiosqlite.connect(db_path) as db:
        db.row_factory = aiosqlite.Row
        cursor = await db.execute("""
            SELECT payload FROM sweep_records
            WHERE k = ? AND n = ?
            ORDER BY seq_index
        """, (k, n))
        rows = await cursor.fetchall()
    return [SweepRecord.model_validate_json(row["payload"]) for row in rows]
