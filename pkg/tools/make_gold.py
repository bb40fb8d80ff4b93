"""Write the mini-corpus gold standoff files from hand-chosen spans.

Each gold span is given as (type, substring, occurrence) and resolved to
code-point offsets in the document text. The bracketed parts of the worked
examples are cut at clause granularity with surrounding punctuation
removed; for the schema exemplars the part runs from the first macro word
to the sentence terminal.

    python tools/make_gold.py corpus/minicorpus
"""

from __future__ import annotations

import shutil
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from argmine.standoff import StandoffDoc, StandoffRecord, format_standoff  # noqa: E402

GOLD: dict[str, list[tuple[str, str]]] = {
    "ex_premise_indicator": [
        ("Claim", "Spirituality was highlighted as a fundamental component of the healing process"),
        ("Premise", "In particular, survivors noted that their faith in God’s direction over the doctors healed them"),
    ],
    "ex_argument": [
        ("Claim", "Key informants highlighted spirituality as a very important component of many women's cancer experience"),
        ("Premise", "In particular, many have an unshakable belief in the power of prayer, putting more importance on "
                    "spirituality, their religious beliefs than on health care providers"),
    ],
    "ex_pc": [
        ("Premise", "For women with non proliferative findings, no family history, a weak family history of breast cancer"),
        ("Claim", "doctors reported no increased risk"),
    ],
    "ex_cp": [
        ("Claim", "Patients report on the risk of breast cancer"),
        ("Premise", "according to histologic findings, the age at diagnosis of benign breast disease, "
                    "the strength of the family history"),
    ],
    "claim_macros": [
        ("Claim", "We may infer that woman"),
        ("Claim", "This bears out the point that doctors"),
        ("Claim", "It follows that patiences"),
        ("Claim", "We can conclude that doctors identified"),
        ("Claim", "So the key informants provides"),
        ("Claim", "It follows that people estimated"),
        ("Claim", "Therefore exemplifies"),
        ("Claim", "So highlighted"),
        ("Claim", "Thus accepted"),
        ("Claim", "risk of breast cancer"),
        ("Claim", "factors of cancer were equaled"),
        ("Claim", "Many woman provides"),
        ("Claim", "Many survivors accepted"),
    ],
    "premise_macros": [
        ("Premise", "In view of the fact that woman"),
        ("Premise", "As shown by doctors"),
        ("Premise", "Since patiences"),
        ("Premise", "As evidenced by people received"),
        ("Premise", "Assuming that doctors observed"),
        ("Premise", "Because the key informants were noted"),
        ("Premise", "Since according"),
        ("Premise", "Given that noted"),
        ("Premise", "Seeing that served"),
        ("Premise", "risk of breast cancer was noted"),
        ("Premise", "Family history regarding"),
        ("Premise", "Physical changes resulting"),
    ],
}


def resolve(text: str, parts: list[tuple[str, str]]) -> list[StandoffRecord]:
    """Find each substring after the end of the previous one."""
    records = []
    cursor = 0
    for type_, sub in parts:
        start = text.find(sub, cursor)
        if start < 0:
            raise SystemExit(f"{sub!r} not found after offset {cursor}")
        records.append(StandoffRecord(start, start + len(sub), type_))
        cursor = start + len(sub)
    return records


def main(corpus: str) -> None:
    root = Path(corpus)
    gold = root / "gold"
    gold.mkdir(exist_ok=True)
    for doc_id, parts in GOLD.items():
        text_path = root / f"{doc_id}.txt"
        text = text_path.read_text(encoding="utf-8")
        doc = StandoffDoc(doc_id, resolve(text, parts))
        (gold / f"{doc_id}.ann").write_text(format_standoff(doc), encoding="utf-8")
        shutil.copyfile(text_path, gold / f"{doc_id}.txt")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "corpus/minicorpus")
