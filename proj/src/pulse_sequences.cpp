#include "ddm/pulse_sequences.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ddm {

namespace {

using cplx = std::complex<double>;

void require_pulse_args(int n, double t) {
    if (n < 0) throw std::invalid_argument("pulse count must be non-negative");
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("sequence duration must be positive and finite");
}

void require_omega(double omega) {
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("angular frequency must be non-negative and finite");
}

// (x - sin x) / x^2, accurate for small x.
double x_minus_sin_over_x2(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return x * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 5040.0 - x2 / 362880.0)));
    }
    return (x - std::sin(x)) / (x * x);
}

// int_a^b e^{iws} ds, written without the 1/w cancellation.
cplx interval_transform(double a, double b, double omega) {
    const double half = 0.5 * (b - a);
    const double amp = omega * half < 1e-8 ? 2.0 * half : 2.0 * std::sin(omega * half) / omega;
    return std::polar(amp, omega * (a + half));
}

// Moments of the modulation field about the window centre,
// m_k = int (s - c)^k eps(s) ds for k = 0..4.
std::array<double, 5> centred_moments(const std::vector<double>& bounds) {
    const double c = 0.5 * bounds.back();
    std::array<double, 5> m{};
    for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        const double a = bounds[j] - c, b = bounds[j + 1] - c;
        double pa = 1.0, pb = 1.0;
        for (int k = 0; k < 5; ++k) {
            pa *= a;
            pb *= b;
            m[k] += sign * (pb - pa) / (k + 1);
        }
    }
    return m;
}

// M_k = int int_{s'<s} eps(s) eps(s') (s - s')^k for odd k = 1, 3.
std::array<double, 2> twist_moments(const std::vector<double>& bounds) {
    const std::size_t intervals = bounds.size() - 1;
    std::array<double, 2> out{};
    const int orders[2] = {1, 3};
    for (int idx = 0; idx < 2; ++idx) {
        const int k = orders[idx];
        const double norm = 1.0 / ((k + 1.0) * (k + 2.0));
        auto p = [k](double x) { return std::pow(x, k + 2); };
        double acc = 0.0;
        for (std::size_t i = 0; i < intervals; ++i) {
            const double ai = bounds[i], bi = bounds[i + 1];
            acc += p(bi - ai) * norm;
            for (std::size_t j = 0; j < i; ++j) {
                const double aj = bounds[j], bj = bounds[j + 1];
                const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                acc += sign * norm * (p(bi - aj) - p(bi - bj) - p(ai - aj) + p(ai - bj));
            }
        }
        out[idx] = acc;
    }
    return out;
}

} // namespace

std::string_view to_string(SequenceFamily family) {
    switch (family) {
    case SequenceFamily::Free: return "free";
    case SequenceFamily::PDD: return "pdd";
    case SequenceFamily::UDD: return "udd";
    case SequenceFamily::Custom: return "custom";
    }
    return "custom";
}

SequenceFamily parse_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "free") return SequenceFamily::Free;
    if (lower == "pdd") return SequenceFamily::PDD;
    if (lower == "udd") return SequenceFamily::UDD;
    if (lower == "custom") return SequenceFamily::Custom;
    throw std::invalid_argument("unknown sequence family '" + std::string(name) + "' (expected free, pdd, udd)");
}

PulseSequence::PulseSequence(std::vector<double> times, double duration, SequenceFamily family)
    : times_(std::move(times)), duration_(duration), family_(family) {
    if (!(duration_ > 0.0) || !std::isfinite(duration_))
        throw std::invalid_argument("sequence duration must be positive and finite");
    double prev = 0.0;
    for (double tj : times_) {
        if (!std::isfinite(tj) || !(tj > prev) || !(tj < duration_))
            throw std::invalid_argument("pulse times must be strictly increasing inside (0, duration)");
        prev = tj;
    }
}

std::vector<double> PulseSequence::boundaries() const {
    std::vector<double> b;
    b.reserve(times_.size() + 2);
    b.push_back(0.0);
    b.insert(b.end(), times_.begin(), times_.end());
    b.push_back(duration_);
    return b;
}

PulseSequence free_evolution(double t) {
    require_pulse_args(0, t);
    return PulseSequence({}, t, SequenceFamily::Free);
}

PulseSequence pdd_times(int n, double t) {
    require_pulse_args(n, t);
    std::vector<double> times(n);
    for (int j = 0; j < n; ++j) times[j] = (j + 1) * t / (n + 1);
    return PulseSequence(std::move(times), t, n == 0 ? SequenceFamily::Free : SequenceFamily::PDD);
}

PulseSequence udd_times(int n, double t) {
    require_pulse_args(n, t);
    std::vector<double> times(n);
    const double step = std::numbers::pi / (2.0 * n + 2.0);
    for (int j = 1; j <= n; ++j) {
        const double s = std::sin(j * step);
        times[j - 1] = t * s * s;
    }
    return PulseSequence(std::move(times), t, n == 0 ? SequenceFamily::Free : SequenceFamily::UDD);
}

PulseSequence make_sequence(SequenceFamily family, int n, double t) {
    switch (family) {
    case SequenceFamily::Free: return free_evolution(t);
    case SequenceFamily::PDD: return pdd_times(n, t);
    case SequenceFamily::UDD: return udd_times(n, t);
    case SequenceFamily::Custom: break;
    }
    throw std::invalid_argument("custom sequences must be built from explicit pulse times");
}

int modulation(const PulseSequence& seq, double s) {
    if (!(s >= 0.0 && s <= seq.duration())) throw std::out_of_range("modulation time outside [0, duration]");
    const auto times = seq.times();
    const auto applied = std::upper_bound(times.begin(), times.end(), s) - times.begin();
    return (applied % 2 == 0) ? 1 : -1;
}

double epsilon_integral(const PulseSequence& seq) {
    const auto b = seq.boundaries();
    double phi = 0.0;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) phi += ((j % 2 == 0) ? 1.0 : -1.0) * (b[j + 1] - b[j]);
    return phi;
}

double filter_function(const PulseSequence& seq, double omega) {
    require_omega(omega);
    const auto b = seq.boundaries();
    const double t = seq.duration();
    if (omega * t < kSmallOmegaT) {
        const auto m = centred_moments(b);
        const double w2 = omega * omega;
        return 0.5 * (m[0] * m[0] + w2 * (m[1] * m[1] - m[0] * m[2]) +
                      w2 * w2 * (m[2] * m[2] / 4.0 + m[0] * m[4] / 12.0 - m[1] * m[3] / 3.0));
    }
    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
        const cplx piece = interval_transform(b[j], b[j + 1], omega);
        sum += (j % 2 == 0) ? piece : -piece;
    }
    return 0.5 * std::norm(sum);
}

double pdd_filter_closed(int n, double omega, double t) {
    require_pulse_args(n, t);
    require_omega(omega);
    const double arg = omega * t / (2.0 * n + 2.0);
    if (omega * t < kSmallOmegaT || std::abs(std::cos(arg)) < 1e-6) return filter_function(pdd_times(n, t), omega);
    const double tn = std::tan(arg);
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    return tn * tn * (1.0 + parity * std::cos(omega * t)) / (omega * omega);
}

double udd_filter_approx(int n, double omega, double t) {
    require_pulse_args(n, t);
    require_omega(omega);
    if (omega == 0.0) return n == 0 ? 0.5 * t * t : 0.0;
    const double jn = std::cyl_bessel_j(static_cast<double>(n + 1), 0.5 * omega * t);
    return 8.0 * (n + 1.0) * (n + 1.0) * jn * jn / (omega * omega);
}

double f_kernel(const PulseSequence& seq, double omega) {
    require_omega(omega);
    const auto b = seq.boundaries();
    if (omega * seq.duration() < kSmallOmegaT) {
        const auto mk = twist_moments(b);
        return omega * mk[0] - omega * omega * omega * mk[1] / 6.0;
    }
    // x(w) = sum_m [sign_m E_m I_m + same-interval term]; f = Im x.
    cplx earlier{0.0, 0.0}; // E_m = int_0^{t_m} eps(s') e^{-iws'} ds'
    double f = 0.0;
    for (std::size_t m = 0; m + 1 < b.size(); ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        const double width = b[m + 1] - b[m];
        const cplx piece = interval_transform(b[m], b[m + 1], omega);
        f += sign * std::imag(earlier * piece);
        f += width * width * x_minus_sin_over_x2(omega * width);
        earlier += sign * std::conj(piece);
    }
    return f;
}

double f_kernel_sum_form(const PulseSequence& seq, double omega) {
    require_omega(omega);
    if (omega == 0.0) return 0.0;
    const auto b = seq.boundaries();
    const int n = seq.pulse_count();
    const double t = seq.duration();
    auto sgn = [](int k) { return (k % 2 == 0) ? 1.0 : -1.0; };

    double theta = sgn(n + 1) * std::sin(omega * t);
    for (int m = 1; m <= n; ++m) theta += 2.0 * sgn(m) * std::sin(omega * b[m]);

    double mu = 0.0;
    for (int m = 1; m <= n; ++m)
        for (int j = 1; j <= m; ++j)
            mu += sgn(m + j) * (std::sin(omega * (b[m] - b[j])) - std::sin(omega * (b[m + 1] - b[j])));

    return (theta + 2.0 * mu) / (omega * omega) + t / omega;
}

} // namespace ddm
