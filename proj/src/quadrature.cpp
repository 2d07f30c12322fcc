#include "ddm/quadrature.hpp"

#include "ddm/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddm {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    PanelEstimate est;
    bool operator<(const Segment& other) const { return est.error < other.est.error; }
};

} // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
    if (!(abs_floor > 0.0)) throw std::invalid_argument("abs_floor must be positive");
    if (max_panels < 1) throw std::invalid_argument("max_panels must be at least 1");
}

PanelEstimate gauss_kronrod_15(const Integrand& integrand, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = integrand(centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_k = std::abs(kronrod);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = integrand(centre - dx);
        f2[j] = integrand(centre + dx);
        kronrod += kWgk[j] * (f1[j] + f2[j]);
        abs_k += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
    }

    // QUADPACK error heuristic.
    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    asc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double abs_val = abs_k * std::abs(half);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (abs_val > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(err, 50.0 * eps * abs_val);

    return {kronrod * half, err, abs_val};
}

QuadratureResult integrate_semi_infinite(const Integrand& integrand, double cutoff_scale,
                                         double oscillation_scale, const QuadratureSpec& spec, double upper) {
    spec.validate();
    if (!(cutoff_scale > 0.0)) throw std::invalid_argument("cutoff_scale must be positive");
    if (!(oscillation_scale >= 0.0)) throw std::invalid_argument("oscillation_scale must be non-negative");
    if (!(upper > 0.0)) throw std::invalid_argument("upper limit must be positive");

    double width = cutoff_scale;
    if (oscillation_scale > 0.0) width = std::min(width, std::numbers::pi / oscillation_scale);

    int evaluations = 0;
    const Integrand counted = [&](double w) {
        ++evaluations;
        return integrand(w);
    };

    std::priority_queue<Segment> heap;
    double value = 0.0, error = 0.0;
    const double march_limit = 10.0 * cutoff_scale;
    int quiet_panels = 0;
    double a = 0.0;
    while (a < upper) {
        const double b = std::min(upper, a + width);
        const PanelEstimate est = gauss_kronrod_15(counted, a, b);
        heap.push({a, b, est});
        value += est.value;
        error += est.error;
        if (static_cast<int>(heap.size()) > spec.max_panels)
            throw NumericFailure("quadrature panel budget exhausted while covering the domain (reached w = " +
                                     std::to_string(b) + ")",
                                 value, error);
        a = b;
        if (std::isinf(upper)) {
            quiet_panels = (est.abs_value < 1e-2 * spec.abs_floor) ? quiet_panels + 1 : 0;
            if (a > march_limit && quiet_panels >= 3) break;
        }
    }

    auto target = [&] { return std::max(spec.abs_floor, spec.rel_tol * std::abs(value)); };
    while (error > target()) {
        if (static_cast<int>(heap.size()) >= spec.max_panels)
            throw NumericFailure("quadrature panel budget exhausted (error " + std::to_string(error) + ")", value,
                                 error);
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const PanelEstimate left = gauss_kronrod_15(counted, worst.a, mid);
        const PanelEstimate right = gauss_kronrod_15(counted, mid, worst.b);
        value += left.value + right.value - worst.est.value;
        error += left.error + right.error - worst.est.error;
        heap.push({worst.a, mid, left});
        heap.push({mid, worst.b, right});
        if (mid <= worst.a || mid >= worst.b) break; // interval exhausted at double precision
    }

    // Re-sum from the panels to shed drift from incremental updates.
    QuadratureResult out;
    out.panels = static_cast<int>(heap.size());
    while (!heap.empty()) {
        out.value += heap.top().est.value;
        out.error_estimate += heap.top().est.error;
        heap.pop();
    }
    out.evaluations = evaluations;
    return out;
}

} // namespace ddm
