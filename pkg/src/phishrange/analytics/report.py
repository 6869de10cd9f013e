"""Assembles survey and quiz records into the study report.

The report mirrors the evaluation pipeline: first-response filtering per
participant, per-group quiz statistics with a ten-interval histogram, the
pooled t-test between groups, the awareness gap, the 75%-benchmark
proportion, the confidence gain, and per-question survey breakdowns.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from typing import Mapping, Protocol, Sequence, TypeVar

from phishrange.analytics.stats import (
    GroupStats,
    TTestReport,
    awareness_gap,
    confidence_gain,
    group_stats,
    histogram10,
    proportion_at_least,
    t_test_pooled,
)
from phishrange.errors import EmptyInput, TooFewScores

CONTROL = "Control"
EXPERIMENTAL = "Experimental"
BENCHMARK_PERCENT = 75.0

# Question catalogs: id -> ("likert" | "choice" | "text"). The ids double as
# the JSON field names accepted by the survey endpoints.
PRE_QUESTIONS: Mapping[str, str] = {
    "q1_familiarity": "likert",
    "q2_victim": "choice",
    "q3_clicked": "choice",
    "q4_confidence": "likert",
}
POST_QUESTIONS: Mapping[str, str] = {
    "q1_understanding": "likert",
    "q2_recommend": "likert",
    "q3_confidence": "likert",
    "q4_helpful": "text",
    "q5_unclear": "text",
    "q6_changes": "text",
    "q7_suggestions": "text",
}
CHOICE_OPTIONS = ("Yes", "No", "Maybe")


@dataclass(frozen=True)
class SurveyRow:
    participant_id: str
    group: str
    answers: Mapping[str, object]
    received_at: float


@dataclass(frozen=True)
class QuizRow:
    participant_id: str
    group: str
    score_percent: float
    received_at: float


@dataclass
class StudyRecords:
    """In-memory view of everything the report consumes."""

    pre_surveys: list[SurveyRow] = field(default_factory=list)
    post_surveys: list[SurveyRow] = field(default_factory=list)
    quiz_results: list[QuizRow] = field(default_factory=list)

    def study_records(self) -> "StudyRecords":
        return self


class SupportsStudyRecords(Protocol):
    def study_records(self) -> StudyRecords: ...


_R = TypeVar("_R", SurveyRow, QuizRow)


def first_response(rows: Sequence[_R]) -> list[_R]:
    """Keep only the earliest row per participant, by server receipt time.

    Ties on receipt time fall back to append order, so re-filtering a store
    that was already filtered is a no-op.
    """
    best: dict[str, _R] = {}
    for row in sorted(rows, key=lambda r: r.received_at):
        best.setdefault(row.participant_id, row)
    return list(best.values())


@dataclass(frozen=True)
class GroupReport:
    stats: GroupStats | None
    histogram: tuple[int, ...]
    proportion_at_benchmark: float | None
    scores: tuple[float, ...]


@dataclass(frozen=True)
class Report:
    control: GroupReport
    experimental: GroupReport
    t_test: TTestReport | None
    awareness_gap: float | None
    confidence_gain: float | None
    pre_breakdown: Mapping[str, Mapping[str, object]]
    post_breakdown: Mapping[str, Mapping[str, object]]
    notes: tuple[str, ...]

    def to_dict(self) -> dict:
        def group_dict(g: GroupReport) -> dict:
            return {
                "n": g.stats.n if g.stats else len(g.scores),
                "mean": g.stats.mean if g.stats else None,
                "sd": g.stats.sd if g.stats else None,
                "histogram": list(g.histogram),
                "proportion_at_least_75": g.proportion_at_benchmark,
            }

        t = None
        if self.t_test is not None:
            t = {
                "t": self.t_test.t,
                "df": self.t_test.df,
                "p_two_tailed": self.t_test.p_two_tailed,
                "method": self.t_test.method,
            }
        return {
            "quiz": {
                "control": group_dict(self.control),
                "experimental": group_dict(self.experimental),
                "t_test": t,
                "awareness_gap": self.awareness_gap,
            },
            "confidence_gain": self.confidence_gain,
            "surveys": {
                "pre": {k: dict(v) for k, v in self.pre_breakdown.items()},
                "post": {k: dict(v) for k, v in self.post_breakdown.items()},
            },
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = ["Study report", "============", ""]
        for label, g in (("Control", self.control), ("Experimental", self.experimental)):
            if g.stats is None:
                lines.append(f"{label:13s} n={len(g.scores)}  (too few quiz results)")
            else:
                bench = f"{g.proportion_at_benchmark * 100:.2f}%" if g.proportion_at_benchmark is not None else "-"
                lines.append(
                    f"{label:13s} n={g.stats.n}  mean={g.stats.mean:.2f}%  "
                    f"sd={g.stats.sd:.2f}%  >=75%: {bench}"
                )
            lines.append(f"{'':13s} histogram {list(g.histogram)}")
        lines.append("")
        if self.t_test is not None:
            lines.append(
                f"t-test ({self.t_test.method}): t={self.t_test.t:.5f}  "
                f"df={self.t_test.df:g}  p={self.t_test.p_two_tailed:.5f}"
            )
        if self.awareness_gap is not None:
            lines.append(f"awareness gap: {self.awareness_gap:.2f} percentage points")
        if self.confidence_gain is not None:
            lines.append(f"confidence gain: {self.confidence_gain:.1f}%")
        for title, breakdown in (("Pre-survey", self.pre_breakdown), ("Post-survey", self.post_breakdown)):
            lines.append("")
            lines.append(f"{title}:")
            for qid, info in breakdown.items():
                if info["type"] == "text":
                    lines.append(f"  {qid}: {info['responses']} free-text responses")
                else:
                    counts = info["counts"]
                    shown = ", ".join(f"{k}:{v}" for k, v in counts.items())
                    mean = f"  mean={info['mean']:.2f}" if info.get("mean") is not None else ""
                    lines.append(f"  {qid}: {shown}{mean}")
        for note in self.notes:
            lines.append("")
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def build_report(store: SupportsStudyRecords) -> Report:
    records = store.study_records()
    notes: list[str] = []

    pre = first_response(records.pre_surveys)
    post = first_response(records.post_surveys)
    quiz = first_response(records.quiz_results)

    groups: dict[str, GroupReport] = {}
    stats_by_group: dict[str, GroupStats | None] = {}
    for name in (CONTROL, EXPERIMENTAL):
        scores = tuple(q.score_percent for q in quiz if q.group == name)
        hist = histogram10(scores)
        try:
            stats = group_stats(scores)
        except TooFewScores:
            stats = None
            notes.append(f"{name} group has fewer than 2 quiz results; group stats omitted")
        try:
            bench = proportion_at_least(scores, BENCHMARK_PERCENT)
        except EmptyInput:
            bench = None
        groups[name] = GroupReport(
            stats=stats, histogram=hist.bins, proportion_at_benchmark=bench, scores=scores
        )
        stats_by_group[name] = stats

    t_test = None
    gap = None
    ctrl, exp = stats_by_group[CONTROL], stats_by_group[EXPERIMENTAL]
    if ctrl is not None and exp is not None:
        t_test = t_test_pooled(ctrl, exp)
        gap = awareness_gap(ctrl, exp)

    pre_conf = [int(r.answers["q4_confidence"]) for r in pre if r.group == EXPERIMENTAL]
    post_conf = [int(r.answers["q3_confidence"]) for r in post]
    gain = None
    if pre_conf and post_conf:
        gain = confidence_gain(pre_conf, post_conf)
    else:
        notes.append("confidence gain needs both pre and post confidence answers")

    return Report(
        control=groups[CONTROL],
        experimental=groups[EXPERIMENTAL],
        t_test=t_test,
        awareness_gap=gap,
        confidence_gain=gain,
        pre_breakdown=_breakdown(pre, PRE_QUESTIONS),
        post_breakdown=_breakdown(post, POST_QUESTIONS),
        notes=tuple(notes),
    )


def _breakdown(
    rows: Sequence[SurveyRow], questions: Mapping[str, str]
) -> dict[str, dict[str, object]]:
    out: dict[str, dict[str, object]] = {}
    for qid, qtype in questions.items():
        if qtype == "text":
            responses = sum(1 for r in rows if str(r.answers.get(qid, "")).strip())
            out[qid] = {"type": "text", "responses": responses}
            continue
        keys = [str(v) for v in (1, 2, 3, 4, 5)] if qtype == "likert" else list(CHOICE_OPTIONS)
        counts = {k: 0 for k in keys}
        values: list[int] = []
        for r in rows:
            v = r.answers.get(qid)
            if v is None:
                continue
            counts[str(v)] = counts.get(str(v), 0) + 1
            if qtype == "likert":
                values.append(int(v))
        entry: dict[str, object] = {"type": qtype, "counts": counts}
        if qtype == "likert":
            entry["mean"] = statistics.fmean(values) if values else None
        out[qid] = entry
    return out
