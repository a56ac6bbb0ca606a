#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mstphase/mst.hpp"
#include "mstphase/panel.hpp"

namespace mstphase {

// Fixed, documented generator so identical seeds give identical output on
// every platform: mt19937_64 -> 53-bit uniforms -> Box-Muller pairs.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // uniform on (0,1]; zero redrawn so logs stay finite
    double u01() {
        for (;;) {
            double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
            if (u > 0) return u;
        }
    }

    // standard normal, Box-Muller, second value cached
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = u01(), u2 = u01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0;
    bool has_spare_ = false;
};

struct FactorMarketSpec {
    size_t n_assets = 0;
    size_t n_days = 0;          // price days; returns span n_days - 1
    std::vector<double> betas;  // per-asset market loading
    double sigma_idio = 0;
    double sigma_market = 0;
    uint64_t seed = 0;
};

struct SuperhubInjection {
    size_t target = 0;           // asset index
    size_t start_day = 0, end_day = 0; // price-day indices; blends days (start, end]
    double rho = 0;              // coupling in [0,1)
    size_t breadth = 0;          // assets coupled to the target
};

// n weekday dates starting 2005-01-03, the synthetic calendar
std::vector<std::string> weekday_dates(size_t n);

// One-factor market: r_i(t) = beta_i * m(t) + eps_i(t), prices compounded
// from 1.0. Tickers S0000..; dates are weekdays from 2005-01-03.
PricePanel gen_factor_market(const FactorMarketSpec& spec);

// Blends the returns of the first `breadth` non-target assets toward the
// target inside the window: r_j <- sqrt(1-rho^2) r_j + rho r_target. Prices
// are recompounded from the first changed return, so rho=0 returns the panel
// bit-identically.
PricePanel inject_superhub(const PricePanel& panel, const SuperhubInjection& inj);

// Preferential-attachment tree: each new vertex attaches to an existing one
// with probability proportional to its degree. Unit edge weights, tickers V0000..
Tree gen_pa_tree(size_t n, uint64_t seed);

} // namespace mstphase
