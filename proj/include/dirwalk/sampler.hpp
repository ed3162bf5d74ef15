#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "dirwalk/errors.hpp"
#include "dirwalk/laws.hpp"
#include "dirwalk/rng.hpp"

namespace dirwalk {

// Stick-breaking limit walk parameters: total Dirichlet mass Q, dimension,
// and the residual-mass threshold at which the tail is discarded.
struct StickConfig {
    double total_mass = 1.0;
    int d = 1;
    double epsilon = 1e-12;

    void validate() const {
        if (!(total_mass > 0.0)) throw DomainError("StickConfig: Q must be positive");
        if (d < 1) throw DomainError("StickConfig: d must be >= 1");
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw DomainError("StickConfig: epsilon must lie in (0, 1)");
    }
    std::string describe() const {
        std::ostringstream os;
        os << "stick Q=" << total_mass << " d=" << d << " eps=" << epsilon;
        return os.str();
    }
};

struct BatchMeta {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
    std::string config;
};

// A seeded batch of points in the closed unit ball, stored row-major.
class SampleBatch {
  public:
    SampleBatch(int d, std::size_t count, BatchMeta meta)
        : d_(d), coords_(count * static_cast<std::size_t>(d)), meta_(std::move(meta)) {
        if (d < 1) throw DomainError("SampleBatch: d must be >= 1");
    }

    int dim() const { return d_; }
    std::size_t count() const { return coords_.size() / static_cast<std::size_t>(d_); }
    const BatchMeta& meta() const { return meta_; }

    std::span<double> point(std::size_t i) {
        return {coords_.data() + i * static_cast<std::size_t>(d_),
                static_cast<std::size_t>(d_)};
    }
    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(d_),
                static_cast<std::size_t>(d_)};
    }

    double sq_radius(std::size_t i) const {
        double s = 0.0;
        for (double x : point(i)) s += x * x;
        return s;
    }

    std::vector<double> sq_radii() const {
        std::vector<double> out(count());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = sq_radius(i);
        return out;
    }

    // signed coordinates for d = 1, squared radii otherwise
    std::vector<double> law_values() const {
        if (d_ != 1) return sq_radii();
        std::vector<double> out(count());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = point(i)[0];
        return out;
    }

    const std::vector<double>& raw() const { return coords_; }

  private:
    int d_;
    std::vector<double> coords_;
    BatchMeta meta_;
};

}  // namespace dirwalk

namespace dirwalk::sampler {

// Uniform direction: normalized Gaussian vector; a Rademacher draw for d = 1.
inline void sample_sphere(int d, RngStream& rng, std::span<double> out) {
    if (d == 1) {
        out[0] = (rng.next_u64() & 1ULL) ? 1.0 : -1.0;
        return;
    }
    double norm2;
    do {
        norm2 = 0.0;
        for (int i = 0; i < d; ++i) {
            out[i] = rng.next_normal();
            norm2 += out[i] * out[i];
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < d; ++i) out[i] *= inv;
}

inline std::vector<double> sample_sphere(int d, RngStream& rng) {
    if (d < 1) throw DomainError("sample_sphere: d must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(d));
    sample_sphere(d, rng, out);
    return out;
}

// Normalized independent gammas with shapes qs.
inline std::vector<double> sample_dirichlet(const std::vector<double>& qs, RngStream& rng) {
    if (qs.empty()) throw DomainError("sample_dirichlet: need at least one weight");
    for (double q : qs)
        if (!(q > 0.0)) throw DomainError("sample_dirichlet: weights must be positive");
    std::vector<double> out(qs.size());
    if (qs.size() == 1) {
        out[0] = 1.0;
        return out;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        out[i] = rng.next_gamma(qs[i]);
        sum += out[i];
    }
    for (double& x : out) x /= sum;
    return out;
}

namespace detail {

// Partitions `count` rows across workers; worker w owns stream (seed, w) and
// fills its contiguous slice, so the result is deterministic in (seed, workers).
template <typename Fill>
void run_partitioned(SampleBatch& batch, std::uint64_t seed, int workers, Fill fill) {
    if (workers < 1) throw DomainError("sampler: worker count must be >= 1");
    const std::size_t count = batch.count();
    const std::size_t base = count / static_cast<std::size_t>(workers);
    const std::size_t rem = count % static_cast<std::size_t>(workers);
    if (workers == 1) {
        RngStream rng(seed, 0);
        fill(rng, batch, 0, count);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t offset = 0;
    for (int w = 0; w < workers; ++w) {
        const std::size_t len = base + (static_cast<std::size_t>(w) < rem ? 1 : 0);
        pool.emplace_back([&batch, seed, w, offset, len, fill] {
            RngStream rng(seed, static_cast<std::uint64_t>(w));
            fill(rng, batch, offset, len);
        });
        offset += len;
    }
    for (auto& t : pool) t.join();
}

inline void fill_walk(const WalkConfig& config, RngStream& rng, SampleBatch& batch,
                      std::size_t offset, std::size_t len) {
    const int d = config.d;
    std::vector<double> theta(static_cast<std::size_t>(d));
    for (std::size_t i = offset; i < offset + len; ++i) {
        const std::vector<double> x = sample_dirichlet(config.qs, rng);
        auto pt = batch.point(i);
        std::fill(pt.begin(), pt.end(), 0.0);
        for (double weight : x) {
            sample_sphere(d, rng, theta);
            for (int c = 0; c < d; ++c) pt[c] += weight * theta[c];
        }
    }
}

inline void fill_stick(const StickConfig& cfg, RngStream& rng, SampleBatch& batch,
                       std::size_t offset, std::size_t len) {
    const int d = cfg.d;
    std::vector<double> theta(static_cast<std::size_t>(d));
    for (std::size_t i = offset; i < offset + len; ++i) {
        auto pt = batch.point(i);
        std::fill(pt.begin(), pt.end(), 0.0);
        double residual = 1.0;
        while (residual >= cfg.epsilon) {
            // Y ~ beta(1, Q) by inversion
            const double y = 1.0 - std::pow(rng.next_open_double(), 1.0 / cfg.total_mass);
            const double pi = residual * y;
            sample_sphere(d, rng, theta);
            for (int c = 0; c < d; ++c) pt[c] += pi * theta[c];
            residual *= 1.0 - y;
        }
    }
}

}  // namespace detail

// Finite Dirichlet walk batch on a caller-owned stream.
inline SampleBatch sample_walk(const WalkConfig& config, std::size_t count, RngStream& rng) {
    config.validate();
    if (count < 1) throw DomainError("sample_walk: count must be >= 1");
    SampleBatch batch(config.d, count,
                      BatchMeta{rng.master_seed(), rng.stream_index(), config.describe()});
    detail::fill_walk(config, rng, batch, 0, count);
    return batch;
}

// Worker-partitioned variant; worker w uses stream index w.
inline SampleBatch sample_walk(const WalkConfig& config, std::size_t count,
                               std::uint64_t seed, int workers) {
    config.validate();
    if (count < 1) throw DomainError("sample_walk: count must be >= 1");
    SampleBatch batch(config.d, count, BatchMeta{seed, 0, config.describe()});
    detail::run_partitioned(batch, seed, workers,
                            [&config](RngStream& rng, SampleBatch& b, std::size_t off,
                                      std::size_t len) {
                                detail::fill_walk(config, rng, b, off, len);
                            });
    return batch;
}

// Stick-breaking limit walk: sticks Y_i ~ beta(1, Q), weights
// Pi_i = Y_i prod_{j<i}(1 - Y_j); the residual tail below epsilon is dropped,
// biasing each point by at most epsilon in norm.
inline SampleBatch sample_stick_breaking(const StickConfig& cfg, std::size_t count,
                                         RngStream& rng) {
    cfg.validate();
    if (count < 1) throw DomainError("sample_stick_breaking: count must be >= 1");
    SampleBatch batch(cfg.d, count,
                      BatchMeta{rng.master_seed(), rng.stream_index(), cfg.describe()});
    detail::fill_stick(cfg, rng, batch, 0, count);
    return batch;
}

inline SampleBatch sample_stick_breaking(const StickConfig& cfg, std::size_t count,
                                         std::uint64_t seed, int workers) {
    cfg.validate();
    if (count < 1) throw DomainError("sample_stick_breaking: count must be >= 1");
    SampleBatch batch(cfg.d, count, BatchMeta{seed, 0, cfg.describe()});
    detail::run_partitioned(batch, seed, workers,
                            [&cfg](RngStream& rng, SampleBatch& b, std::size_t off,
                                   std::size_t len) {
                                detail::fill_stick(cfg, rng, b, off, len);
                            });
    return batch;
}

// Pairwise Dirichlet mixing Y_1 W_1 + Y_2 W_2 with fresh (Y_1, Y_2) ~ D(q1, q2).
inline SampleBatch compose_semigroup(const SampleBatch& a, const SampleBatch& b,
                                     double q1, double q2, RngStream& rng) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("compose_semigroup: batches have different dimensions");
    if (a.count() != b.count())
        throw DimensionMismatch("compose_semigroup: batches have different counts");
    if (!(q1 > 0.0 && q2 > 0.0))
        throw DomainError("compose_semigroup: weights must be positive");
    std::ostringstream cfg;
    cfg << "compose q=" << q1 << "," << q2 << " of (" << a.meta().config << ") + ("
        << b.meta().config << ")";
    SampleBatch out(a.dim(), a.count(),
                    BatchMeta{rng.master_seed(), rng.stream_index(), cfg.str()});
    for (std::size_t i = 0; i < a.count(); ++i) {
        const double g1 = rng.next_gamma(q1);
        const double g2 = rng.next_gamma(q2);
        const double y1 = g1 / (g1 + g2);
        const double y2 = 1.0 - y1;
        auto pa = a.point(i);
        auto pb = b.point(i);
        auto po = out.point(i);
        for (int c = 0; c < a.dim(); ++c) po[c] = y1 * pa[c] + y2 * pb[c];
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV persistence. Coordinates are written in shortest round-trip form so the
// file reads back bit-exactly.

namespace detail {
inline std::string shortest(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}
}  // namespace detail

inline void write_csv(const SampleBatch& batch, std::ostream& os) {
    os << "# seed=" << batch.meta().master_seed << "\n";
    os << "# stream=" << batch.meta().stream_index << "\n";
    os << "# d=" << batch.dim() << "\n";
    os << "# config=" << batch.meta().config << "\n";
    for (std::size_t i = 0; i < batch.count(); ++i) {
        auto pt = batch.point(i);
        for (int c = 0; c < batch.dim(); ++c) {
            if (c) os << ',';
            os << detail::shortest(pt[c]);
        }
        os << '\n';
    }
}

inline void write_csv(const SampleBatch& batch, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DomainError("write_csv: cannot open " + path);
    write_csv(batch, os);
}

inline SampleBatch read_csv(std::istream& is) {
    BatchMeta meta;
    int d = 0;
    std::vector<double> coords;
    std::string line;
    const auto header_value = [](const std::string& l) {
        return l.substr(l.find('=') + 1);
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.starts_with("# seed=")) meta.master_seed = std::stoull(header_value(line));
            else if (line.starts_with("# stream=")) meta.stream_index = std::stoull(header_value(line));
            else if (line.starts_with("# d=")) d = std::stoi(header_value(line));
            else if (line.starts_with("# config=")) meta.config = header_value(line);
            continue;
        }
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            double x;
            auto res = std::from_chars(p, end, x);
            if (res.ec != std::errc{}) throw DomainError("read_csv: malformed row: " + line);
            coords.push_back(x);
            p = res.ptr;
            if (p < end && *p == ',') ++p;
        }
    }
    if (d < 1) throw DomainError("read_csv: missing '# d=' header");
    if (coords.size() % static_cast<std::size_t>(d) != 0)
        throw DomainError("read_csv: row width does not match d");
    SampleBatch batch(d, coords.size() / static_cast<std::size_t>(d), meta);
    for (std::size_t i = 0; i < batch.count(); ++i) {
        auto pt = batch.point(i);
        for (int c = 0; c < d; ++c) pt[c] = coords[i * static_cast<std::size_t>(d) + c];
    }
    return batch;
}

inline SampleBatch read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DomainError("read_csv: cannot open " + path);
    return read_csv(is);
}

}  // namespace dirwalk::sampler
