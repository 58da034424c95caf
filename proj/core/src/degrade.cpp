#include "sskg/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "sskg/rng.hpp"

namespace sskg {

namespace {

// Dense two-phase simplex for min c.v s.t. E v = d, v >= 0.
// Bland's entering/leaving rule throughout, so it cannot cycle. Sized for
// the small programs produced by degradedness tests (tens of rows).
struct LpSolution {
    std::vector<double> v;
    double objective;
};

class SimplexTableau {
public:
    SimplexTableau(std::vector<double> e, std::vector<double> d, std::size_t m, std::size_t n)
        : m_(m), n_(n), cols_(n + m), t_(m * (n + m), 0.0), rhs_(std::move(d)), basis_(m) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (rhs_[i] < 0.0) {
                rhs_[i] = -rhs_[i];
                for (std::size_t j = 0; j < n_; ++j) e[i * n_ + j] = -e[i * n_ + j];
            }
            for (std::size_t j = 0; j < n_; ++j) at(i, j) = e[i * n_ + j];
            at(i, n_ + i) = 1.0; // artificial
            basis_[i] = n_ + i;
        }
    }

    LpSolution solve(const std::vector<double>& cost) {
        std::vector<double> phase1(cols_, 0.0);
        for (std::size_t j = n_; j < cols_; ++j) phase1[j] = 1.0;
        iterate(phase1, cols_);
        if (objective(phase1) > 1e-9) {
            throw numeric_error("simplex: phase 1 ended infeasible");
        }
        expel_artificials();
        std::vector<double> full(cost);
        full.resize(cols_, 0.0);
        iterate(full, n_); // artificials barred from re-entering
        LpSolution s{std::vector<double>(n_, 0.0), 0.0};
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) s.v[basis_[i]] = rhs_[i];
        }
        s.objective = objective(full);
        return s;
    }

private:
    double& at(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }

    double objective(const std::vector<double>& c) const {
        double o = 0.0;
        for (std::size_t i = 0; i < m_; ++i) o += c[basis_[i]] * rhs_[i];
        return o;
    }

    void iterate(const std::vector<double>& c, std::size_t priceCols) {
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < priceCols; ++j) { // Bland: lowest index wins
                double r = c[j];
                for (std::size_t i = 0; i < m_; ++i) r -= c[basis_[i]] * at(i, j);
                if (r < -1e-9) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return;
            std::size_t leave = m_;
            double bestRatio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (at(i, enter) > 1e-11) {
                    const double ratio = rhs_[i] / at(i, enter);
                    if (ratio < bestRatio - 1e-12 ||
                        (ratio < bestRatio + 1e-12 &&
                         (leave == m_ || basis_[i] < basis_[leave]))) {
                        bestRatio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m_) {
                throw numeric_error("simplex: unbounded direction in bounded program");
            }
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const double pv = at(row, col);
        for (std::size_t j = 0; j < cols_; ++j) at(row, j) /= pv;
        rhs_[row] /= pv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = at(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) at(i, j) -= f * at(row, j);
            rhs_[i] -= f * rhs_[row];
        }
        basis_[row] = col;
    }

    // After phase 1 an artificial can linger in the basis at value zero;
    // swap it for any structural column so phase 2 never moves it again.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t col = cols_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (std::fabs(at(i, j)) > 1e-9) {
                    col = j;
                    break;
                }
            }
            if (col == cols_) {
                // Redundant constraint: zero the row so it can never pivot.
                for (std::size_t j = 0; j < cols_; ++j) at(i, j) = 0.0;
                rhs_[i] = 0.0;
                continue;
            }
            pivot(i, col);
        }
    }

    std::size_t m_, n_, cols_;
    std::vector<double> t_, rhs_;
    std::vector<std::size_t> basis_;
};

struct ConditionalPair {
    std::vector<double> a; // P_{Y|X}, surviving rows only
    std::vector<double> b; // P_{Z|X}
    std::size_t rows, ny, nz;
};

ConditionalPair conditionals_from(const JointDist3& j) {
    const auto px = marginal_x(j);
    std::vector<std::size_t> alive;
    for (std::size_t x = 0; x < j.nx(); ++x) {
        if (px.p(x) > 0.0) alive.push_back(x);
    }
    if (alive.empty()) {
        throw validation_error("stochastic_degradedness_test: degenerate X marginal");
    }
    const auto jxy = marginal_xy(j);
    const auto jxz = marginal_xz(j);
    ConditionalPair cp;
    cp.rows = alive.size();
    cp.ny = j.ny();
    cp.nz = j.nz();
    cp.a.resize(cp.rows * cp.ny);
    cp.b.resize(cp.rows * cp.nz);
    for (std::size_t r = 0; r < cp.rows; ++r) {
        const std::size_t x = alive[r];
        for (std::size_t y = 0; y < cp.ny; ++y) cp.a[r * cp.ny + y] = jxy.at(x, y) / px.p(x);
        for (std::size_t z = 0; z < cp.nz; ++z) cp.b[r * cp.nz + z] = jxz.at(x, z) / px.p(x);
    }
    return cp;
}

} // namespace

bool markov_test(const JointDist3& j, double tol) {
    return conditional_mutual_information(j, Conditioning::OnY) <= tol;
}

DegradednessVerdict stochastic_degradedness_test(const JointDist3& j, double tol) {
    const auto cp = conditionals_from(j);
    const std::size_t nw = cp.ny * cp.nz;
    const std::size_t ns = cp.rows * cp.nz;
    const std::size_t nv = nw + 2 * ns;
    const std::size_t m = ns + cp.ny;
    std::vector<double> e(m * nv, 0.0), d(m, 0.0), c(nv, 0.0);
    // Rows 0..ns-1: sum_y A(x,y) W(y,z) + s+(x,z) - s-(x,z) = B(x,z).
    for (std::size_t x = 0; x < cp.rows; ++x) {
        for (std::size_t z = 0; z < cp.nz; ++z) {
            const std::size_t row = x * cp.nz + z;
            for (std::size_t y = 0; y < cp.ny; ++y) {
                e[row * nv + y * cp.nz + z] = cp.a[x * cp.ny + y];
            }
            e[row * nv + nw + row] = 1.0;
            e[row * nv + nw + ns + row] = -1.0;
            d[row] = cp.b[x * cp.nz + z];
        }
    }
    // Rows ns..ns+ny-1: each W row sums to one.
    for (std::size_t y = 0; y < cp.ny; ++y) {
        const std::size_t row = ns + y;
        for (std::size_t z = 0; z < cp.nz; ++z) e[row * nv + y * cp.nz + z] = 1.0;
        d[row] = 1.0;
    }
    for (std::size_t k = 0; k < 2 * ns; ++k) c[nw + k] = 1.0;

    SimplexTableau tableau(std::move(e), std::move(d), m, nv);
    const auto sol = tableau.solve(c);

    // Clean the witness (clip pivot dust, renormalize rows) and recompute the
    // residual directly; the reported number never relies on tableau state.
    std::vector<double> w(sol.v.begin(), sol.v.begin() + static_cast<std::ptrdiff_t>(nw));
    for (double& v : w) v = std::max(v, 0.0);
    for (std::size_t y = 0; y < cp.ny; ++y) {
        double rowSum = 0.0;
        for (std::size_t z = 0; z < cp.nz; ++z) rowSum += w[y * cp.nz + z];
        if (rowSum <= 0.0) {
            w[y * cp.nz] = 1.0; // unconstrained row (zero-mass y); any pmf works
            rowSum = 1.0;
        }
        for (std::size_t z = 0; z < cp.nz; ++z) w[y * cp.nz + z] /= rowSum;
    }
    double residual = 0.0;
    for (std::size_t x = 0; x < cp.rows; ++x) {
        for (std::size_t z = 0; z < cp.nz; ++z) {
            double lhs = 0.0;
            for (std::size_t y = 0; y < cp.ny; ++y) {
                lhs += cp.a[x * cp.ny + y] * w[y * cp.nz + z];
            }
            residual += std::fabs(cp.b[x * cp.nz + z] - lhs);
        }
    }

    DegradednessVerdict verdict;
    verdict.tol = tol;
    if (residual <= tol) {
        verdict.kind = DegradednessVerdict::Kind::Stochastic;
        verdict.witness = Channel(j.labels_y(), j.labels_z(), std::move(w));
        verdict.residual = residual;
    } else {
        verdict.kind = DegradednessVerdict::Kind::None;
        verdict.witness = std::nullopt;
        verdict.residual = std::min(residual, sol.objective);
    }
    return verdict;
}

DegradednessVerdict classify_degradedness(const JointDist3& j, double markovTol, double lpTol) {
    auto verdict = stochastic_degradedness_test(j, lpTol);
    if (markov_test(j, markovTol) && verdict.kind == DegradednessVerdict::Kind::Stochastic) {
        verdict.kind = DegradednessVerdict::Kind::Physical;
    }
    return verdict;
}

bool usual_order_check(const GridCcdf& a, const GridCcdf& b) {
    if (a.xs != b.xs) throw validation_error("usual_order_check: grids disagree");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b.vals[i] < a.vals[i]) return false;
    }
    return true;
}

OrderReport nakagami_order_report(const NakagamiSpec& specX, const NakagamiSpec& specZ,
                                  const std::vector<double>& grid) {
    OrderReport r{true, std::nullopt, grid.size()};
    for (double x : grid) {
        if (nakagami_power_ccdf(specX, x) < nakagami_power_ccdf(specZ, x)) {
            r.dominated = false;
            r.firstViolation = x;
            break;
        }
    }
    return r;
}

bool nakagami_order_check(const NakagamiSpec& specX, const NakagamiSpec& specZ,
                          const std::vector<double>& grid) {
    return nakagami_order_report(specX, specZ, grid).dominated;
}

CouplingPair construct_coupling(const NakagamiSpec& specX, const NakagamiSpec& specZ,
                                std::size_t n, std::uint64_t seed) {
    if (n == 0) throw validation_error("construct_coupling: n must be positive");
    const auto grid = order_check_grid(specX, specZ, 256);
    if (!nakagami_order_check(specX, specZ, grid)) {
        throw guard_error("construct_coupling: X power does not dominate Z power");
    }
    CouplingPair cp{seed, {}};
    cp.pairs.reserve(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        const double px = power_inverse_cdf(specX, u);
        const double pz = power_inverse_cdf(specZ, u);
        if (px < pz - 1e-9) {
            throw guard_error("construct_coupling: domination violated between grid points");
        }
        cp.pairs.emplace_back(px, pz);
    }
    return cp;
}

JointDist3 cwtc_build(const JointDist3& j, const FiniteDist& uDist) {
    const std::size_t q = j.nx();
    if (uDist.size() != q) {
        throw validation_error("cwtc_build: U alphabet must match the X alphabet");
    }
    for (std::size_t u = 0; u < q; ++u) {
        if (std::fabs(uDist.p(u) - 1.0 / static_cast<double>(q)) > 1e-12) {
            throw validation_error("cwtc_build: U must be uniform over the X alphabet");
        }
    }
    std::vector<std::string> pairY, pairZ;
    pairY.reserve(j.ny() * q);
    pairZ.reserve(j.nz() * q);
    for (const auto& ly : j.labels_y())
        for (const auto& lx : j.labels_x()) pairY.push_back(ly + "|" + lx);
    for (const auto& lz : j.labels_z())
        for (const auto& lx : j.labels_x()) pairZ.push_back(lz + "|" + lx);

    std::vector<double> probs(q * pairY.size() * pairZ.size(), 0.0);
    const std::size_t strideY = pairY.size();
    const std::size_t strideZ = pairZ.size();
    for (std::size_t u = 0; u < q; ++u) {
        for (std::size_t x = 0; x < q; ++x) {
            const std::size_t v = (u + x) % q;
            for (std::size_t y = 0; y < j.ny(); ++y) {
                for (std::size_t z = 0; z < j.nz(); ++z) {
                    probs[(u * strideY + y * q + v) * strideZ + z * q + v] +=
                        uDist.p(u) * j.at(x, y, z);
                }
            }
        }
    }
    return JointDist3(uDist.labels(), std::move(pairY), std::move(pairZ), std::move(probs));
}

bool cwtc_degraded_check(const JointDist3& cwtcJoint, double tol) {
    return conditional_mutual_information(cwtcJoint, Conditioning::OnY) <= tol;
}

} // namespace sskg
