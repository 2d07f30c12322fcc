#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace ddm {

enum class SequenceFamily { Free, PDD, UDD, Custom };

std::string_view to_string(SequenceFamily family);
SequenceFamily parse_family(std::string_view name);

/// Instantaneous pi-pulse times on [0, duration]. Times are strictly
/// increasing and lie strictly inside the window; an empty list is free
/// evolution. Units are 1/omega_c.
class PulseSequence {
public:
    PulseSequence(std::vector<double> times, double duration,
                  SequenceFamily family = SequenceFamily::Custom);

    std::span<const double> times() const noexcept { return times_; }
    double duration() const noexcept { return duration_; }
    SequenceFamily family() const noexcept { return family_; }
    int pulse_count() const noexcept { return static_cast<int>(times_.size()); }

    /// Interval boundaries t_0 = 0, t_1..t_n, t_{n+1} = duration.
    std::vector<double> boundaries() const;

private:
    std::vector<double> times_;
    double duration_;
    SequenceFamily family_;
};

PulseSequence free_evolution(double t);
PulseSequence pdd_times(int n, double t);
PulseSequence udd_times(int n, double t);
PulseSequence make_sequence(SequenceFamily family, int n, double t);

/// Sign of the modulation field at time s. Right-continuous: a pulse at
/// exactly s counts as already applied.
int modulation(const PulseSequence& seq, double s);

/// Integral of the modulation field over the whole window.
double epsilon_integral(const PulseSequence& seq);

/// F_n(w, t) = |int_0^t e^{iws} eps(s) ds|^2 / 2.
double filter_function(const PulseSequence& seq, double omega);

/// Closed form of the periodic-sequence filter. Falls back to the generic
/// sum near tangent poles and at small w*t.
double pdd_filter_closed(int n, double omega, double t);

/// Bessel approximation 8(n+1)^2 J_{n+1}^2(wt/2) / w^2 of the Uhrig filter.
double udd_filter_approx(int n, double omega, double t);

/// Twisting kernel f_n(w, t) = int_0^t ds int_0^s ds' eps(s) eps(s') sin w(s - s').
double f_kernel(const PulseSequence& seq, double omega);

/// The same kernel assembled term by term as theta(w,t) + mu(w,t) + t/w, with
/// an O(n^2) double sum. Kept as an algebraic cross-check of f_kernel.
double f_kernel_sum_form(const PulseSequence& seq, double omega);

/// Threshold on w*t below which filter_function and f_kernel use their
/// Taylor expansions.
inline constexpr double kSmallOmegaT = 1e-4;

} // namespace ddm
