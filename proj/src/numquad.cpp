#include "swipt/numquad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod abscissae (positive half, descending) and weights; every
// odd entry is also a 7-point Gauss node.
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

double magnitude(double v) { return std::abs(v); }
double magnitude(const std::complex<double>& v) { return std::abs(v); }
bool finite(double v) { return std::isfinite(v); }
bool finite(const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T>
struct Panel {
    double a, b;
    T value;
    double err;
    double abs_value;
};

template <class T>
struct PanelOrder {
    bool operator()(const Panel<T>& x, const Panel<T>& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;  // ties broken by position so the order is reproducible
    }
};

// One G7/K15 application with the QUADPACK error heuristic.
template <class T, class F>
Panel<T> gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<T, 15> fv{};
    fv[7] = f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
    }
    T kronrod = kWgk[7] * fv[7];
    T gauss = kWg[3] * fv[7];
    double abs_k = kWgk[7] * magnitude(fv[7]);
    for (int j = 0; j < 7; ++j) {
        const T pair = fv[j] + fv[14 - j];
        kronrod += kWgk[j] * pair;
        abs_k += kWgk[j] * (magnitude(fv[j]) + magnitude(fv[14 - j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    const T mean = 0.5 * kronrod;
    double asc = kWgk[7] * magnitude(fv[7] - mean);
    for (int j = 0; j < 7; ++j) {
        asc += kWgk[j] * (magnitude(fv[j] - mean) + magnitude(fv[14 - j] - mean));
    }
    const double scale = std::abs(half);
    kronrod *= half;
    gauss *= half;
    abs_k *= scale;
    asc *= scale;

    double err = magnitude(kronrod - gauss);
    if (asc != 0 && err != 0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    if (abs_k > std::numeric_limits<double>::min() / (50 * kEps)) err = std::max(50 * kEps * abs_k, err);
    if (!finite(kronrod) || !std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    return {a, b, kronrod, err, abs_k};
}

template <class T>
struct Outcome {
    T value{};
    double err = 0;
    double abs_value = 0;
    std::size_t evals = 0;
    bool converged = false;
};

// Neumaier-compensated sum of panel values in left-endpoint order.
template <class T>
T compensated_sum(std::vector<Panel<T>>& panels) {
    std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    T sum{}, comp{};
    for (const auto& p : panels) {
        const T t = sum + p.value;
        if constexpr (std::is_same_v<T, double>) {
            if (std::abs(sum) >= std::abs(p.value))
                comp += (sum - t) + p.value;
            else
                comp += (p.value - t) + sum;
        } else {
            // component-wise for complex values
            auto fix = [](double s, double v, double tt) {
                return std::abs(s) >= std::abs(v) ? (s - tt) + v : (v - tt) + s;
            };
            comp += T(fix(sum.real(), p.value.real(), t.real()), fix(sum.imag(), p.value.imag(), t.imag()));
        }
        sum = t;
    }
    return sum + comp;
}

template <class T, class F>
Outcome<T> adaptive(const F& f, double a, double b, double rel_tol, double abs_tol,
                    int max_bisections, int initial_panels = 1) {
    Outcome<T> out;
    std::size_t evals = 0;
    auto counted = [&](double x) {
        ++evals;
        return f(x);
    };

    std::priority_queue<Panel<T>, std::vector<Panel<T>>, PanelOrder<T>> heap;
    T total{};
    double total_err = 0;
    bool poisoned = false;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + (b - a) * i / initial_panels;
        const double hi = (i + 1 == initial_panels) ? b : a + (b - a) * (i + 1) / initial_panels;
        auto p = gk15<T>(counted, lo, hi);
        total += p.value;
        total_err += p.err;
        poisoned |= !std::isfinite(p.err);
        heap.push(p);
    }

    int bisections = 0;
    auto target = [&] { return std::max(rel_tol * magnitude(total), abs_tol); };
    while (!poisoned && total_err > target() && bisections < max_bisections) {
        Panel<T> worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        // too narrow to split in floating point: accept the current estimate
        if (!(mid > worst.a && mid < worst.b) ||
            std::abs(worst.b - worst.a) <= 4 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            break;
        }
        heap.pop();
        auto left = gk15<T>(counted, worst.a, mid);
        auto right = gk15<T>(counted, mid, worst.b);
        total += (left.value + right.value) - worst.value;
        total_err += (left.err + right.err) - worst.err;
        poisoned |= !std::isfinite(left.err) || !std::isfinite(right.err);
        heap.push(left);
        heap.push(right);
        ++bisections;
        // running totals drift; resynchronise occasionally
        if (bisections % 64 == 0) {
            total_err = 0;
            auto copy = heap;
            while (!copy.empty()) {
                total_err += copy.top().err;
                copy.pop();
            }
        }
    }

    std::vector<Panel<T>> panels;
    panels.reserve(heap.size());
    double err = 0, abs_value = 0;
    while (!heap.empty()) {
        err += heap.top().err;
        abs_value += heap.top().abs_value;
        panels.push_back(heap.top());
        heap.pop();
    }
    out.value = compensated_sum(panels);
    out.err = err;
    out.abs_value = abs_value;
    out.evals = evals;
    out.converged = !poisoned && finite(out.value) && err <= std::max(rel_tol * magnitude(out.value), abs_tol);
    return out;
}

template <class T>
QuadratureResult<T> to_result(const Outcome<T>& o) {
    return {o.value, o.err, o.evals, o.converged};
}

// Growing truncation over [0, T], [T, 2T], ... ; `f` is already folded when
// the caller wants the whole line.
template <class T, class F>
QuadratureResult<T> grow_truncation(const F& f, const QuadratureSettings& s) {
    constexpr int kMaxDoublings = 48;
    double upper = 8.0 * s.scale;
    // the core takes half the error budget; the tail segments share the rest
    auto core = adaptive<T>(f, 0.0, upper, 0.5 * s.rel_tol, s.abs_tol, s.max_refinements, 4);

    T total = core.value;
    double interior_err = core.err;
    std::size_t evals = core.evals;
    bool ok = core.converged;
    double tail = std::numeric_limits<double>::infinity();
    double prev_tail = tail;
    int stalls = 0;

    for (int k = 0; k < kMaxDoublings; ++k) {
        const double seg_abs_tol = std::max(s.abs_tol, 0.05 * s.rel_tol * magnitude(total));
        auto seg = adaptive<T>(f, upper, 2 * upper, s.rel_tol, seg_abs_tol, s.max_refinements, 2);
        upper *= 2;
        total += seg.value;
        interior_err += seg.err;
        evals += seg.evals;
        ok = ok && (seg.converged || seg.err <= seg_abs_tol);
        tail = seg.abs_value;
        if (tail <= std::max(s.rel_tol * magnitude(total), s.abs_tol)) break;
        stalls = (tail > 0.9 * prev_tail) ? stalls + 1 : 0;
        if (stalls >= 3) break;  // integrand is not decaying
        prev_tail = tail;
    }

    QuadratureResult<T> r;
    r.value = total;
    r.err_estimate = std::max(interior_err, tail);
    r.evaluations = evals;
    r.converged = ok && finite(total) && r.err_estimate <= std::max(s.rel_tol * magnitude(total), s.abs_tol);
    return r;
}

template <class T, class F>
QuadratureResult<T> semi_infinite_impl(const F& f, const QuadratureSettings& s) {
    validate(s);
    switch (s.transform) {
        case Transform::SemiInfiniteMap: {
            const double L = s.scale;
            auto mapped = [&](double u) -> T {
                const double v = 1.0 - u;
                return f(L * u / v) * (L / (v * v));
            };
            return to_result(adaptive<T>(mapped, 0.0, 1.0, s.rel_tol, s.abs_tol, s.max_refinements, 8));
        }
        case Transform::None:
            return grow_truncation<T>(f, s);
        case Transform::DoublyInfiniteMap:
            break;
    }
    throw ValidationError("transform", "DoublyInfiniteMap is not valid on (0, inf)");
}

}  // namespace

void validate(const QuadratureSettings& s) {
    if (!(s.rel_tol > 0)) throw ValidationError("rel_tol", "must be > 0");
    if (!(s.abs_tol >= 0)) throw ValidationError("abs_tol", "must be >= 0");
    if (s.max_refinements < 1) throw ValidationError("max_refinements", "must be >= 1");
    if (!(s.scale > 0) || !std::isfinite(s.scale)) throw ValidationError("scale", "must be finite and > 0");
}

QuadratureResult<double> integrate_finite(const RealIntegrand& f, double a, double b,
                                          const QuadratureSettings& s) {
    validate(s);
    return to_result(adaptive<double>(f, a, b, s.rel_tol, s.abs_tol, s.max_refinements));
}

QuadratureResult<std::complex<double>> integrate_finite_complex(const ComplexIntegrand& f, double a,
                                                                double b, const QuadratureSettings& s) {
    validate(s);
    return to_result(adaptive<std::complex<double>>(f, a, b, s.rel_tol, s.abs_tol, s.max_refinements));
}

QuadratureResult<double> integrate_semi_infinite(const RealIntegrand& f, const QuadratureSettings& s) {
    return semi_infinite_impl<double>(f, s);
}

QuadratureResult<std::complex<double>> integrate_semi_infinite_complex(const ComplexIntegrand& f,
                                                                       const QuadratureSettings& s) {
    return semi_infinite_impl<std::complex<double>>(f, s);
}

QuadratureResult<std::complex<double>> integrate_contour(const ComplexIntegrand& g,
                                                         QuadratureSettings s) {
    validate(s);
    using C = std::complex<double>;
    switch (s.transform) {
        case Transform::DoublyInfiniteMap: {
            auto folded = [&](double tau) -> C { return g(tau) + g(-tau); };
            return grow_truncation<C>(folded, s);
        }
        case Transform::None: {
            // symmetric growth of [-T, T]: integrate both halves without folding
            auto upper = grow_truncation<C>(g, s);
            auto lower = grow_truncation<C>([&](double tau) { return g(-tau); }, s);
            QuadratureResult<C> r;
            r.value = upper.value + lower.value;
            r.err_estimate = upper.err_estimate + lower.err_estimate;
            r.evaluations = upper.evaluations + lower.evaluations;
            r.converged = upper.converged && lower.converged;
            return r;
        }
        case Transform::SemiInfiniteMap:
            break;
    }
    throw ValidationError("transform", "contour integrals need DoublyInfiniteMap or None");
}

}  // namespace swipt
