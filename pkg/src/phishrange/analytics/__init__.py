"""Study statistics and report assembly."""

from phishrange.analytics.report import (
    QuizRow,
    Report,
    StudyRecords,
    SurveyRow,
    build_report,
    first_response,
)
from phishrange.analytics.stats import (
    GroupStats,
    Histogram10,
    TTestReport,
    awareness_gap,
    confidence_gain,
    group_stats,
    histogram10,
    proportion_at_least,
    student_t_two_tailed_p,
    t_test_pooled,
    t_test_scores,
)

__all__ = [
    "GroupStats",
    "Histogram10",
    "TTestReport",
    "QuizRow",
    "Report",
    "StudyRecords",
    "SurveyRow",
    "awareness_gap",
    "build_report",
    "confidence_gain",
    "first_response",
    "group_stats",
    "histogram10",
    "proportion_at_least",
    "student_t_two_tailed_p",
    "t_test_pooled",
    "t_test_scores",
]
