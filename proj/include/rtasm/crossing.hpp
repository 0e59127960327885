#pragma once

#include "rtasm/parser.hpp"
#include "rtasm/run.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rtasm::crossing {

inline const Location kDir{"Dir"};
inline const Location kGateStatus{"GateStatus"};
inline Location track_status(const std::string& track) { return Location("TrackStatus", {Value::atom(track)}); }
inline Location deadline(const std::string& track) { return Location("Deadline", {Value::atom(track)}); }

inline const Value kOpen = Value::atom("open");
inline const Value kClose = Value::atom("close");
inline const Value kOpened = Value::atom("opened");
inline const Value kClosed = Value::atom("closed");
inline const Value kEmpty = Value::atom("empty");
inline const Value kComing = Value::atom("coming");
inline const Value kInCrossing = Value::atom("inCrossing");

struct Params {
    Rational dclose;
    Rational dopen;
    Rational dmin;
    Rational dmax;

    /// dmin - dclose: delay between detecting a train and signalling close.
    Rational wait_time() const { return dmin - dclose; }
    /// dclose + (dmax - dmin): effective closing lead time in the liveness bound.
    Rational big_dclose() const { return dclose + (dmax - dmin); }

    /// Throws Error(BadParams) unless all are positive and dclose < dmin <= dmax.
    void validate() const;

    friend bool operator==(const Params&, const Params&) = default;
};

/// One train's passage: detected, enters the crossing, leaves it.
struct Passage {
    Rational detected;
    Rational entered;
    Rational exited;
    friend bool operator==(const Passage&, const Passage&) = default;
};

struct TrainPattern {
    std::vector<std::vector<Passage>> tracks;

    std::size_t track_count() const { return tracks.size(); }
    /// Largest pattern moment, or 0 for a train-free pattern.
    Rational last_moment() const;
    /// All pattern moments in ascending order, without duplicates (0 excluded).
    std::vector<Rational> moments() const;

    friend bool operator==(const TrainPattern&, const TrainPattern&) = default;
};

/// trk1, trk2, ...
std::string track_name(std::size_t index);
std::vector<std::string> track_names(std::size_t count);

struct PatternViolation {
    std::size_t track = 0;                // 0-based
    std::optional<std::size_t> passage;   // 0-based
    std::string clause;
    std::string message;
};

std::vector<PatternViolation> validate_pattern(const TrainPattern& pattern, const Params& params);

/// Vocabulary U+ for the given number of tracks: Dir, GateStatus, TrackStatus, Deadline,
/// the four delay constants, WaitTime, the named elements, CT and the finite universes.
std::shared_ptr<const Vocabulary> crossing_vocabulary(std::size_t tracks);

/// Internal symbols of the reduct vocabularies: U1 drops GateStatus, U0 also drops Deadline and Dir.
std::set<std::string> reduct_u1();
std::set<std::string> reduct_u0();

/// Static part: constants, named elements, universes. Throws Error(BadParams).
State static_state(const Params& params, std::size_t tracks);

/// Initial state: every track empty with Deadline infinity, Dir open, GateStatus opened, CT 0.
State initial_state(const Params& params, std::size_t tracks);

/// The two-module program (Gate, Controller), parsed from its textual form.
const Program& crossing_program();
/// Controller alone (the one-module program used for controller-only runs).
Program controller_program();
/// Keyword source of the program.
std::string_view program_text(std::string_view module);

const GuardAbbreviations& abbreviations();
const Guard& safe_to_open_guard();

/// Constituent controller rules with the free variable x: SignalDeadline, SignalClose,
/// ClearDeadline; and the closed SignalOpen rule.
const Rule& signal_deadline_rule();
const Rule& signal_close_rule();
const Rule& clear_deadline_rule();
const Rule& signal_open_rule();

/// Direct evaluation of SafeToOpen and of its per-track part s(x) on a state with CT.
bool safe_to_open(const State& s);
bool local_safe(const State& s, const std::string& track);

/// TrackStatus over [0, horizon] induced by a track's passages.
Trajectory track_status_trajectory(const std::vector<Passage>& passages, const Rational& horizon);

Params params_of(const Run& run);
std::vector<std::string> tracks_of(const Run& run);

/// Recovers the pattern from the TrackStatus trajectories. Throws Error(InvalidPattern)
/// when the statuses do not follow empty -> coming -> inCrossing -> empty cycles with
/// changes visible at the moment itself.
TrainPattern pattern_of(const Run& run);

struct RegularityViolation {
    std::string clause;
    Interval where;
    std::string message;
};

/// Train Motion, Controller immediacy, Gate boundedness and Gate Timing, plus the initial
/// state and run validity they presuppose.
std::vector<RegularityViolation> regularity_violations(const Run& run);

} // namespace rtasm::crossing
