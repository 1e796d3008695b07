#include "swipt/mcsim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "swipt/errors.hpp"
#include "swipt/parallel.hpp"

namespace swipt {

namespace {

using C = std::complex<double>;

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
}

// Re(a * conj(b)) without the NaN bookkeeping of std::complex multiplication.
inline double re_dot(C a, C b) noexcept { return a.real() * b.real() + a.imag() * b.imag(); }

// Frame-independent quantities of one configuration.
struct Link {
    double phi;
    double src_amp0, src_amp1;  // sqrt(P_src * d^-alpha * [phi])
    double relay_amp2;          // sqrt(d2^-alpha)
    double n0, n1a, n1c, n2;
    double n1;  // phi*n1a + n1c
    double gain_num;     // P_r without the |h1|^2 factor
    bool gain_follows_h1;
    double gain_den;     // N1 + d1^-alpha P_src phi
    double nc_av;
    double pl2;
};

Link make_link(const McConfig& cfg) {
    const auto& p = cfg.params;
    Link k{};
    const bool con = cfg.eh_mode == EhMode::CON;
    const double p_src = (con && cfg.con_power == ConPower::TotalSplit) ? 0.5 * p.p0 : p.p0;
    const double pl0 = std::pow(p.d0, -p.alpha);
    const double pl1 = std::pow(p.d1, -p.alpha);
    k.pl2 = std::pow(p.d2, -p.alpha);
    k.phi = con ? 1.0 : 1.0 - p.theta;
    k.src_amp0 = std::sqrt(p_src * pl0);
    k.src_amp1 = std::sqrt(p_src * k.phi * pl1);
    k.relay_amp2 = std::sqrt(k.pl2);
    k.n0 = p.n0a + p.n0c;
    k.n1a = p.n1a;
    k.n1c = p.n1c;
    k.n1 = k.phi * k.n1a + k.n1c;
    k.n2 = p.n2a + p.n2c;
    k.gain_den = k.n1 + pl1 * p_src * k.phi;
    switch (cfg.eh_mode) {
        case EhMode::IEH:
            k.gain_num = p.p0 * p.eta * p.theta * pl1;
            k.gain_follows_h1 = true;
            break;
        case EhMode::AEH:
            k.gain_num = p.p0 * p.eta * p.theta * pl1;
            k.gain_follows_h1 = false;
            break;
        case EhMode::CON:
            k.gain_num = p_src;
            k.gain_follows_h1 = false;
            break;
    }
    // E[G^2 |h2|^2] with E|h1|^2 = E|h2|^2 = 1
    k.nc_av = k.n2 + k.gain_num / k.gain_den * k.n1 * k.pl2;
    return k;
}

FrameErrors frame(const McConfig& cfg, const Link& k, Xoshiro256& rng) {
    C h0 = rng.complex_normal(1.0);
    C h1 = rng.complex_normal(1.0);
    C h2 = rng.complex_normal(1.0);
    if (cfg.force_unit_sr_power) h1 /= std::abs(h1);

    const double h1_pow = std::norm(h1);
    const double g2 = (k.gain_follows_h1 ? k.gain_num * h1_pow : k.gain_num) / k.gain_den;
    const double g = std::sqrt(g2);
    const double nc = cfg.lc_weights == LcWeights::Average ? k.nc_av : k.n2 + g2 * std::norm(h2) * k.n1 * k.pl2;
    const double w_direct = 1.0 / k.n0;
    const double w_relay = 1.0 / nc;

    const C a0 = k.src_amp0 * h0;
    const C a1 = k.src_amp1 * h1;
    const C relay = g * k.relay_amp2 * h2;
    const double sq_phi = std::sqrt(k.phi);

    FrameErrors e;
    C y0_prev, yc_prev;
    int s = 1;
    for (int n = 0; n < cfg.symbols_per_frame; ++n) {
        int d = 1;
        if (n > 0) {
            d = rng.sign_bit();
            s *= d;
        }
        const C w0 = rng.complex_normal(k.n0);
        const C w1 = sq_phi * rng.complex_normal(k.n1a) + rng.complex_normal(k.n1c);
        const C w2 = rng.complex_normal(k.n2);
        const C y0 = a0 * static_cast<double>(s) + w0;
        const C y1 = a1 * static_cast<double>(s) + w1;
        const C yc = relay * y1 + w2;
        if (n > 0) {
            const double m0 = re_dot(y0, y0_prev);
            const double mc = re_dot(yc, yc_prev);
            const double xi = w_direct * m0 + w_relay * mc;
            e.direct += (m0 >= 0 ? 1 : -1) != d;
            e.th += (mc >= 0 ? 1 : -1) != d;
            e.lc += (xi >= 0 ? 1 : -1) != d;
        }
        y0_prev = y0;
        yc_prev = yc;
    }
    return e;
}

struct Totals {
    std::uint64_t th = 0, lc = 0, direct = 0, frames = 0;

    std::uint64_t of(Scheme s) const {
        switch (s) {
            case Scheme::TH: return th;
            case Scheme::LC: return lc;
            case Scheme::DirectOnly: return direct;
        }
        return 0;
    }
    void add(const Totals& o) {
        th += o.th;
        lc += o.lc;
        direct += o.direct;
        frames += o.frames;
    }
};

Totals run_range(const McConfig& cfg, const Link& k, std::uint64_t first, std::uint64_t count) {
    Totals t;
    for (std::uint64_t i = first; i < first + count; ++i) {
        auto rng = Xoshiro256::substream(cfg.seed, i);
        const auto e = frame(cfg, k, rng);
        t.th += static_cast<std::uint64_t>(e.th);
        t.lc += static_cast<std::uint64_t>(e.lc);
        t.direct += static_cast<std::uint64_t>(e.direct);
    }
    t.frames = count;
    return t;
}

// Processes whole batches in parallel, then scans them in order so the stop
// point is the same as a sequential run would find.
template <class Done>
Totals run_frames(const McConfig& cfg, Done done) {
    validate(cfg);
    const Link k = make_link(cfg);
    const std::uint64_t batch = kEarlyStopBatch;
    const std::uint64_t n_batches = (cfg.frames + batch - 1) / batch;
    const unsigned workers = resolve_threads(cfg.threads);
    const std::uint64_t wave = cfg.min_errors > 0 ? std::max<std::uint64_t>(4ULL * workers, 16) : n_batches;

    Totals total;
    for (std::uint64_t b0 = 0; b0 < n_batches; b0 += wave) {
        const std::uint64_t nb = std::min(wave, n_batches - b0);
        std::vector<Totals> parts(nb);
        parallel_for(nb, workers, [&](std::size_t j) {
            const std::uint64_t first = (b0 + j) * batch;
            parts[j] = run_range(cfg, k, first, std::min(batch, cfg.frames - first));
        });
        for (const auto& p : parts) {
            total.add(p);
            if (cfg.min_errors > 0 && done(total)) return total;
        }
    }
    return total;
}

}  // namespace

std::string_view to_string(EhMode m) noexcept {
    switch (m) {
        case EhMode::IEH: return "IEH";
        case EhMode::AEH: return "AEH";
        case EhMode::CON: return "CON";
    }
    return "?";
}

std::string_view to_string(LcWeights w) noexcept {
    return w == LcWeights::Average ? "AVERAGE" : "INSTANTANEOUS";
}

std::string_view to_string(ConPower p) noexcept {
    return p == ConPower::PerNode ? "PER_NODE" : "TOTAL_SPLIT";
}

std::optional<EhMode> parse_eh_mode(std::string_view s) {
    const auto u = upper(s);
    if (u == "IEH") return EhMode::IEH;
    if (u == "AEH") return EhMode::AEH;
    if (u == "CON") return EhMode::CON;
    return std::nullopt;
}

std::optional<LcWeights> parse_lc_weights(std::string_view s) {
    const auto u = upper(s);
    if (u == "AVERAGE") return LcWeights::Average;
    if (u == "INSTANTANEOUS") return LcWeights::Instantaneous;
    return std::nullopt;
}

std::optional<ConPower> parse_con_power(std::string_view s) {
    const auto u = upper(s);
    if (u == "PER_NODE") return ConPower::PerNode;
    if (u == "TOTAL_SPLIT") return ConPower::TotalSplit;
    return std::nullopt;
}

void validate(const McConfig& cfg) {
    validate(cfg.params);
    if (cfg.frames < 1) throw ValidationError("frames", "must be >= 1");
    if (cfg.symbols_per_frame < 2) throw ValidationError("symbols_per_frame", "must be >= 2");
}

McResult make_result(std::uint64_t errors, std::uint64_t bits, std::uint64_t seed, std::uint64_t frames) {
    McResult r;
    r.errors = errors;
    r.bits = bits;
    r.seed = seed;
    r.frames_run = frames;
    if (bits > 0) {
        r.ber = static_cast<double>(errors) / static_cast<double>(bits);
        r.ci95_halfwidth = 1.96 * std::sqrt(r.ber * (1.0 - r.ber) / static_cast<double>(bits));
    }
    return r;
}

std::vector<int> diff_encode(std::span<const int> bits) {
    std::vector<int> s;
    s.reserve(bits.size() + 1);
    s.push_back(1);
    for (int d : bits) {
        if (d != 1 && d != -1) throw ValidationError("bits", "entries must be +1 or -1");
        s.push_back(s.back() * d);
    }
    return s;
}

int FrameErrors::of(Scheme s) const noexcept {
    switch (s) {
        case Scheme::TH: return th;
        case Scheme::LC: return lc;
        case Scheme::DirectOnly: return direct;
    }
    return 0;
}

FrameErrors simulate_frame(const McConfig& cfg, Xoshiro256& rng) {
    validate(cfg);
    return frame(cfg, make_link(cfg), rng);
}

McResult run_monte_carlo(const McConfig& cfg) {
    const auto t = run_frames(cfg, [&](const Totals& t) { return t.of(cfg.scheme) >= cfg.min_errors; });
    const auto bits = t.frames * static_cast<std::uint64_t>(cfg.symbols_per_frame - 1);
    return make_result(t.of(cfg.scheme), bits, cfg.seed, t.frames);
}

std::array<McResult, 3> run_monte_carlo_all(const McConfig& cfg) {
    const auto t = run_frames(cfg, [&](const Totals& t) {
        return std::min({t.th, t.lc, t.direct}) >= cfg.min_errors;
    });
    const auto bits = t.frames * static_cast<std::uint64_t>(cfg.symbols_per_frame - 1);
    return {make_result(t.th, bits, cfg.seed, t.frames), make_result(t.lc, bits, cfg.seed, t.frames),
            make_result(t.direct, bits, cfg.seed, t.frames)};
}

McResult baseline_variants(const McConfig& cfg) {
    if (cfg.eh_mode == EhMode::IEH) throw ValidationError("eh_mode", "baseline variants are AEH or CON");
    return run_monte_carlo(cfg);
}

std::vector<double> sample_two_hop_snr(const DerivedConstants& c, std::uint64_t n, std::uint64_t seed,
                                       unsigned threads) {
    std::vector<double> out(n);
    parallel_for(
        n, threads,
        [&](std::size_t i) {
            auto rng = Xoshiro256::substream(seed, i);
            (void)rng.complex_normal(1.0);  // h0, keeps the draw order of the simulator
            const double x = std::norm(rng.complex_normal(1.0));
            const double y = std::norm(rng.complex_normal(1.0));
            out[i] = two_hop_snr(c, x, y);
        },
        4096);
    return out;
}

}  // namespace swipt
