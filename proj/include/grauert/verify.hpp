#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grauert::verify {

struct CheckResult {
    std::string name;
    double expected = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string provenance; // closed-form | paper-asymptotic | cross-formula
    std::string note;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    double wall_seconds = 0.0;

    bool all_pass() const;
    void append(const VerificationReport& other);
};

// Acceptance criteria; numbering matches the verification suite's report.
VerificationReport criterion1_circle_closed_form();
VerificationReport criterion2_matrix_elements();
// The sawtooth comparison (up to the single fitted constant) and the jump
// detection. The jump-location comparison against the closed-form progression
// with the pi offset is known to fail by half a gap; the series-consistent
// progression is reported alongside. See the project notes.
VerificationReport criterion3_elliptic_q(bool jump_location_as_stated = true);
VerificationReport criterion4_torus();
VerificationReport criterion5_sphere_extremals();
VerificationReport criterion6_period_recovery();
VerificationReport criterion7_gaussian_beams();
VerificationReport criterion8_jump_identity_bound();

VerificationReport run_criterion(int which);
VerificationReport run_all(std::ostream* progress = nullptr);

void print_report(const VerificationReport& report, std::ostream& os);

} // namespace grauert::verify
