"""Regenerate the bundled demo pool and jobs.

Writes src/humblescreen/fixtures/{candidates,jobs}.jsonl. The output is
deterministic (fixed seed, sorted keys), so rerunning this script on an
unchanged recipe leaves the files byte-identical.

Usage: python tools/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "humblescreen" / "fixtures"

SEED = 12345
N_CANDIDATES = 240

JOBS = [
    {
        "id": "j-react",
        "title": "ReactJS Developer",
        "description": "Build and maintain interactive web frontends.",
        "requirements": {
            "react": 3.0,
            "javascript": 2.0,
            "typescript": 2.0,
            "css": 1.0,
            "testing": 1.0,
        },
    },
    {
        "id": "j-data",
        "title": "Data Engineer",
        "description": "Own batch pipelines and the analytics warehouse.",
        "requirements": {
            "python": 3.0,
            "sql": 3.0,
            "spark": 2.0,
            "airflow": 1.0,
            "cloud": 1.0,
        },
    },
    {
        "id": "j-ml",
        "title": "Machine Learning Engineer",
        "description": "Train, evaluate, and ship predictive models.",
        "requirements": {
            "python": 3.0,
            "ml": 3.0,
            "statistics": 2.0,
            "cloud": 1.0,
        },
    },
    {
        "id": "j-bizdev",
        "title": "Business Development & Sponsorships Manager",
        "description": "Grow partner revenue and sponsorship deals.",
        "requirements": {
            "sales": 3.0,
            "negotiation": 2.0,
            "communication": 2.0,
            "marketing": 1.0,
        },
    },
    {
        "id": "j-ux",
        "title": "UX Designer",
        "description": "Design and validate product experiences.",
        "requirements": {
            "design": 3.0,
            "figma": 2.0,
            "research": 2.0,
            "css": 1.0,
        },
    },
    {
        "id": "j-devops",
        "title": "DevOps Engineer",
        "description": "Keep build, deploy, and runtime infrastructure healthy.",
        "requirements": {
            "cloud": 3.0,
            "kubernetes": 2.0,
            "linux": 2.0,
            "python": 1.0,
            "terraform": 1.0,
        },
    },
]

# Everything any job asks for, plus general skills nobody requires.
EXTRA_SKILLS = ["git", "agile", "writing", "excel", "java", "go"]

FIRST_NAMES = [
    "Alex", "Bailey", "Casey", "Devon", "Emery", "Finley", "Gray", "Harper",
    "Indra", "Jordan", "Kai", "Lennon", "Morgan", "Noor", "Oakley", "Parker",
    "Quinn", "Reese", "Sage", "Tatum",
]
LAST_NAMES = [
    "Adams", "Bauer", "Chen", "Dubois", "Eriksen", "Fischer", "Garcia",
    "Haddad", "Ivanov", "Jensen", "Kim", "Larsen", "Mbeki", "Novak",
    "Okafor", "Petrov", "Quispe", "Rossi", "Singh", "Tanaka",
]


def main() -> None:
    rng = np.random.default_rng(SEED)
    vocab = sorted({s for job in JOBS for s in job["requirements"]} | set(EXTRA_SKILLS))

    candidates = []
    for i in range(N_CANDIDATES):
        cid = f"cand-{i + 1:03d}"
        label = f"{FIRST_NAMES[i % len(FIRST_NAMES)]} {LAST_NAMES[(i // len(FIRST_NAMES)) % len(LAST_NAMES)]}"
        # Strong in one job's skill set, with scattered background skills.
        archetype = JOBS[i % len(JOBS)]["requirements"]
        features = {}
        for skill in archetype:
            if rng.random() < 0.9:
                features[skill] = round(float(rng.uniform(0.35, 1.0)), 3)
        n_extra = int(rng.integers(2, 6))
        for skill in rng.choice(vocab, size=n_extra, replace=False):
            features.setdefault(str(skill), round(float(rng.uniform(0.05, 0.6)), 3))
        if not features:
            features[str(rng.choice(vocab))] = round(float(rng.uniform(0.1, 0.5)), 3)
        candidates.append({"id": cid, "features": features, "label": label})

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    with (OUT_DIR / "candidates.jsonl").open("w", encoding="utf-8") as fh:
        for record in candidates:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    with (OUT_DIR / "jobs.jsonl").open("w", encoding="utf-8") as fh:
        for job in JOBS:
            fh.write(json.dumps({**job, "status": "open"}, sort_keys=True) + "\n")
    print(f"wrote {len(candidates)} candidates and {len(JOBS)} jobs to {OUT_DIR}")


if __name__ == "__main__":
    main()
