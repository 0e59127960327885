#pragma once

#include "rtasm/crossing.hpp"

#include <string>
#include <vector>

namespace rtasm::crossing {

enum class Status { Pass, Fail, Indeterminate, Skipped };
std::string_view to_string(Status status);

struct Witness {
    Interval where;
    std::string expected;
    std::string observed;

    const Rational& moment() const { return where.lo; }
};

struct Verdict {
    std::string name;
    Status status = Status::Pass;
    std::string reason;
    std::vector<Witness> witnesses;

    bool failed() const { return status == Status::Fail; }
};

/// GateStatus = closed while any train is in the crossing, and over the widened window
/// [t1 + dmin, t3] of every passage. Throws Error(InvalidRun) when the run lacks the
/// crossing locations or its track statuses do not form a train pattern.
Verdict check_safety(const Run& run);

/// GateStatus = opened over [a + dopen, b - Dclose] for every maximal crossing-free (a, b).
Verdict check_liveness(const Run& run);
/// Same with the two lead times replaced (used for the strengthened variants).
Verdict check_liveness(const Run& run, const Rational& open_lead, const Rational& close_lead);

/// Nine verdicts, in order: Deadline Lemma, Three Rules Corollary, Local SafeToOpen Lemma,
/// Global SafeToOpen Lemma, Dir Lemma, SignalOpen Corollary, Uninterrupted Closing,
/// Uninterrupted Opening, Dir and GateStatus Corollary.
std::vector<Verdict> check_lemmas(const Run& run);

/// Safety, liveness, then the lemmas.
std::vector<Verdict> check_all(const Run& run);

/// s(x) and SafeToOpen over the whole run, evaluated from the program's guard.
Trajectory local_safe_signal(const Run& run, const std::string& track);
Trajectory safe_to_open_signal(const Run& run);

struct TightnessWitness {
    Run run;
    Rational unit;       // time unit scaling the fixed moments 100 and 110
    Rational delay;      // the chosen opening (part 1) or closing (part 2) delay
    Verdict strengthened; // fails
};

/// Single-track run showing that the liveness bound cannot be shortened: part 1 replaces
/// dopen with c, part 2 replaces Dclose with c. Throws Error(NoWitness) if c is not in
/// (0, dopen) resp. (0, Dclose), Error(BadParams) for a part other than 1 or 2.
TightnessWitness tightness_witness(int part, const Params& params, const Rational& c);

} // namespace rtasm::crossing
