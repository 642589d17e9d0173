# Invariant suites and their report
from .report import CheckResult, VerifyReport, REPORT_SCHEMA
from .suites import elliptic_suite, hyperbolic_suite, magnus_suite, profile_suite, inject_fault, inject_measure_fault
