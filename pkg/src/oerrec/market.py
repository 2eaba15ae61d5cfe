"""Skill demand extraction from job vacancies and the job -> required-skills index.

Extraction is whole-word phrase document frequency: a skill counts once per
vacancy whose body contains at least one of its alias phrases.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from oerrec.errors import UnknownJobError, UnknownSkillError, ValidationError


@dataclass
class Vacancy:
    id: str
    job_title: str
    country: str
    city: str
    posted_date: str
    body: str

    def __post_init__(self):
        if not self.body or not self.body.strip():
            raise ValidationError("vacancy body must be non-empty", field="body")


@dataclass
class SkillLexiconEntry:
    skill_id: str
    canonical_name: str
    aliases: list[str]

    def __post_init__(self):
        if not self.aliases:
            raise ValidationError(f"skill {self.skill_id!r} needs at least one alias", field="aliases")
        self.aliases = [a.lower() for a in self.aliases]


@dataclass
class SkillDemand:
    skill_id: str
    vacancy_count: int
    rank: int


def normalize_job_title(title: str) -> str:
    """Lowercase, strip punctuation, collapse whitespace."""
    cleaned = re.sub(r"[^0-9a-z]+", " ", title.lower())
    return " ".join(cleaned.split())


def _phrase_pattern(alias: str) -> re.Pattern:
    return re.compile(r"(?<![0-9a-z])" + re.escape(alias) + r"(?![0-9a-z])")


def mentions_skill(body_lower: str, entry: SkillLexiconEntry) -> bool:
    return any(_phrase_pattern(alias).search(body_lower) for alias in entry.aliases)


def extract_skills(
    vacancies: list[Vacancy],
    lexicon: list[SkillLexiconEntry],
    top_n: int = 16,
) -> list[SkillDemand]:
    """Rank lexicon skills by how many vacancies mention them (whole-word phrase match).

    Only skills with at least one mention are returned; ties sort by canonical
    name. Counts are non-increasing with rank and ranks run 1..n without gaps.
    """
    if not lexicon:
        raise ValidationError("lexicon must be non-empty", field="lexicon")
    counts: dict[str, int] = {}
    names = {entry.skill_id: entry.canonical_name for entry in lexicon}
    for vacancy in vacancies:
        body = vacancy.body.lower()
        for entry in lexicon:
            if mentions_skill(body, entry):
                counts[entry.skill_id] = counts.get(entry.skill_id, 0) + 1
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], names[kv[0]]))
    return [
        SkillDemand(skill_id=skill, vacancy_count=count, rank=i + 1)
        for i, (skill, count) in enumerate(ordered[:top_n])
    ]


@dataclass
class MarketIndex:
    """Immutable product of a market build: demand lists, lexicon, descriptions."""

    lexicon: list[SkillLexiconEntry]
    descriptions: dict[str, str]
    overall_demand: list[SkillDemand]
    by_job: dict[str, list[SkillDemand]] = field(default_factory=dict)

    def known_skill_ids(self) -> set[str]:
        return {entry.skill_id for entry in self.lexicon}

    def skill_description(self, skill_id: str) -> str:
        """Stored description text; missing or empty entries are errors."""
        text = self.descriptions.get(skill_id)
        if not text or not text.strip():
            raise UnknownSkillError(f"no description for skill {skill_id!r}")
        return text

    def required_skills_for_job(
        self, job_title: str, country: str | None = None, city: str | None = None
    ) -> list[SkillDemand]:
        """Demand list for the narrowest matching key: (job, country, city),
        then (job, country), then (job)."""
        job = normalize_job_title(job_title)
        keys = []
        if country and city:
            keys.append(_job_key(job, country, city))
        if country:
            keys.append(_job_key(job, country, None))
        keys.append(_job_key(job, None, None))
        for key in keys:
            if key in self.by_job:
                return self.by_job[key]
        raise UnknownJobError(f"no market data for job {job_title!r}")

    def to_dict(self) -> dict:
        return {
            "lexicon": [
                {"id": e.skill_id, "name": e.canonical_name, "aliases": e.aliases}
                for e in self.lexicon
            ],
            "descriptions": self.descriptions,
            "overall_demand": [_demand_to_dict(d) for d in self.overall_demand],
            "by_job": {k: [_demand_to_dict(d) for d in v] for k, v in self.by_job.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MarketIndex":
        return cls(
            lexicon=[
                SkillLexiconEntry(skill_id=e["id"], canonical_name=e["name"], aliases=e["aliases"])
                for e in data["lexicon"]
            ],
            descriptions=dict(data["descriptions"]),
            overall_demand=[_demand_from_dict(d) for d in data["overall_demand"]],
            by_job={k: [_demand_from_dict(d) for d in v] for k, v in data["by_job"].items()},
        )

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1, sort_keys=True), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "MarketIndex":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _job_key(job: str, country: str | None, city: str | None) -> str:
    parts = [job]
    if country is not None:
        parts.append(country.strip().lower())
    if city is not None:
        parts.append(city.strip().lower())
    return "|".join(parts)


def _demand_to_dict(d: SkillDemand) -> dict:
    return {"skill_id": d.skill_id, "vacancy_count": d.vacancy_count, "rank": d.rank}


def _demand_from_dict(d: dict) -> SkillDemand:
    return SkillDemand(skill_id=d["skill_id"], vacancy_count=d["vacancy_count"], rank=d["rank"])


def build_market_index(
    vacancies: list[Vacancy],
    lexicon: list[SkillLexiconEntry],
    descriptions: dict[str, str],
    top_n: int = 16,
) -> MarketIndex:
    """Build demand lists overall and per job/location key from a vacancy batch."""
    overall = extract_skills(vacancies, lexicon, top_n=top_n)
    by_job: dict[str, list[SkillDemand]] = {}

    groups: dict[str, list[Vacancy]] = {}
    for vacancy in vacancies:
        job = normalize_job_title(vacancy.job_title)
        for key in (
            _job_key(job, None, None),
            _job_key(job, vacancy.country, None),
            _job_key(job, vacancy.country, vacancy.city),
        ):
            groups.setdefault(key, []).append(vacancy)
    for key, group in groups.items():
        by_job[key] = extract_skills(group, lexicon, top_n=top_n)
    return MarketIndex(
        lexicon=lexicon, descriptions=descriptions, overall_demand=overall, by_job=by_job
    )


def load_vacancies(dump_dir) -> list[Vacancy]:
    """Read every *.jsonl file in the directory, one JSON vacancy per line."""
    vacancies = []
    for path in sorted(Path(dump_dir).glob("*.jsonl")):
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                raw = json.loads(line)
                vacancies.append(
                    Vacancy(
                        id=str(raw["id"]),
                        job_title=raw["title"],
                        country=raw["country"],
                        city=raw["city"],
                        posted_date=raw.get("date", ""),
                        body=raw["body"],
                    )
                )
    return vacancies


def load_lexicon(path) -> list[SkillLexiconEntry]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        SkillLexiconEntry(skill_id=e["id"], canonical_name=e["name"], aliases=e["aliases"])
        for e in data
    ]


def load_descriptions(path) -> dict[str, str]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValidationError("description corpus must be a JSON object of skill_id -> text")
    return {str(k): str(v) for k, v in data.items()}
