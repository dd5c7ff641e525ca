// Copyright 2026 The bechain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bechain/qsp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "bechain/rng.h"
#include "json.hpp"

namespace bechain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSafety = 1.0 - 1e-6;

Parity infer_parity(const std::vector<double> &c) {
    bool even = true, odd = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] != 0.0) {
            (k % 2 == 0 ? odd : even) = false;
        }
    }
    if (even) {
        return Parity::even;
    }
    return odd ? Parity::odd : Parity::none;
}

double cheb_t(int k, double x) { return std::cos(k * std::acos(std::clamp(x, -1.0, 1.0))); }

struct Mat2 {
    Complex a, b, c, d;
};

inline Mat2 mul(const Mat2 &x, const Mat2 &y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 eval2(const std::vector<double> &phases, double x) {
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    const Complex is(0.0, s);
    Mat2 u{std::polar(1.0, phases[0]), 0.0, 0.0, std::polar(1.0, -phases[0])};
    for (std::size_t j = 1; j < phases.size(); ++j) {
        Mat2 w{x, is, is, x};
        u = mul(u, w);
        Complex e = std::polar(1.0, phases[j]);
        u.a *= e;
        u.c *= e;
        u.b *= std::conj(e);
        u.d *= std::conj(e);
    }
    return u;
}

std::vector<double> expand_symmetric(const Eigen::VectorXd &r, int d) {
    std::vector<double> ph(static_cast<std::size_t>(d + 1));
    for (int j = 0; j <= d; ++j) {
        int k = std::min(j, d - j);
        ph[static_cast<std::size_t>(j)] = r(k);
    }
    return ph;
}

double validation_residual(const std::vector<double> &phases, const ChebPoly &p) {
    double worst = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double x = std::cos((2.0 * j - 1.0) * kPi / 200.0);
        worst = std::max(worst, std::abs(eval2(phases, x).a.real() - p(x)));
    }
    return worst;
}

// Newton iteration on the reduced symmetric phases at the positive Chebyshev
// nodes. Returns the final phases.
std::vector<double> newton_solve(const ChebPoly &p, int d, Eigen::VectorXd r) {
    const int m = static_cast<int>(r.size());
    std::vector<double> nodes(static_cast<std::size_t>(m));
    Eigen::VectorXd target(m);
    for (int j = 0; j < m; ++j) {
        nodes[static_cast<std::size_t>(j)] = std::cos((2.0 * (j + 1) - 1.0) * kPi / (4.0 * m));
        target(j) = p(nodes[static_cast<std::size_t>(j)]);
    }
    auto residual = [&](const Eigen::VectorXd &v) {
        std::vector<double> ph = expand_symmetric(v, d);
        Eigen::VectorXd f(m);
        for (int j = 0; j < m; ++j) {
            f(j) = eval2(ph, nodes[static_cast<std::size_t>(j)]).a.real() - target(j);
        }
        return f;
    };
    Eigen::VectorXd f = residual(r);
    const double h = 1e-7;
    for (int it = 0; it < 200 && f.cwiseAbs().maxCoeff() > 1e-14; ++it) {
        Eigen::MatrixXd jac(m, m);
        for (int k = 0; k < m; ++k) {
            Eigen::VectorXd rp = r, rm = r;
            rp(k) += h;
            rm(k) -= h;
            jac.col(k) = (residual(rp) - residual(rm)) / (2.0 * h);
        }
        Eigen::VectorXd step = jac.colPivHouseholderQr().solve(f);
        if (!step.allFinite()) {
            break;
        }
        r -= step;
        Eigen::VectorXd fn = residual(r);
        if (!fn.allFinite()) {
            break;
        }
        bool stalled = fn.cwiseAbs().maxCoeff() >= f.cwiseAbs().maxCoeff() && fn.cwiseAbs().maxCoeff() < 1e-12;
        f = fn;
        if (stalled) {
            break;
        }
    }
    return expand_symmetric(r, d);
}

}  // namespace

const char *parity_name(Parity p) {
    switch (p) {
        case Parity::even:
            return "even";
        case Parity::odd:
            return "odd";
        default:
            return "none";
    }
}

double ChebPoly::operator()(double x) const {
    // Clenshaw recurrence.
    double b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k) {
        double b0 = 2.0 * x * b1 - b2 + coeffs[static_cast<std::size_t>(k)];
        b2 = b1;
        b1 = b0;
    }
    double c0 = coeffs.empty() ? 0.0 : coeffs[0];
    return x * b1 - b2 + c0;
}

ChebPoly chebyshev_t(int d) {
    if (d < 0) {
        throw Error("chebyshev_t: negative degree");
    }
    ChebPoly p;
    p.coeffs.assign(static_cast<std::size_t>(d + 1), 0.0);
    p.coeffs.back() = 1.0;
    p.degree = d;
    p.parity = d % 2 == 0 ? Parity::even : Parity::odd;
    return p;
}

double sup_norm(const ChebPoly &p, int points) {
    double s = 0.0;
    for (int i = 0; i < points; ++i) {
        double x = -1.0 + 2.0 * i / (points - 1);
        s = std::max(s, std::abs(p(x)));
    }
    return s;
}

ChebPoly approx_half_sqrt(double delta, double eta) {
    if (!(delta > 0.0 && delta <= 0.5)) {
        throw Error("approx_half_sqrt: delta must lie in (0, 1/2]");
    }
    if (!(eta > 0.0 && eta <= 0.5)) {
        throw Error("approx_half_sqrt: eta must lie in (0, 1/2]");
    }
    const int nfit = 4000;
    std::vector<double> xs, ys, ws;
    xs.reserve(2 * nfit);
    const double root = std::sqrt(delta);
    // Below delta the target is the even sextic in x / delta that matches
    // sqrt(x)/2 and its first three derivatives at delta.
    auto target = [&](double x) {
        if (x >= delta) {
            return 0.5 * std::sqrt(x);
        }
        const double t2 = (x / delta) * (x / delta);
        return 0.5 * root * (0.6015625 + t2 * (0.6015625 + t2 * (-0.2578125 + t2 * 0.0546875)));
    };
    for (int i = 0; i < nfit; ++i) {
        xs.push_back(std::cos((2.0 * i + 1.0) * kPi / (4.0 * nfit)));
    }
    for (int i = 0; i < nfit; ++i) {
        xs.push_back(delta + (1.0 - delta) * i / (nfit - 1));
    }
    for (double x : xs) {
        ys.push_back(target(x));
        ws.push_back(x >= delta ? 1.0 : 1e-9);
    }
    const int ncheck = 10000;

    struct Fit {
        ChebPoly poly;
        bool ok = false;
    };
    auto fit = [&](int deg) {
        const int nb = deg / 2 + 1;
        const auto rows = static_cast<Eigen::Index>(xs.size());
        Eigen::MatrixXd a(rows, nb);
        Eigen::VectorXd b(rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
            double x = xs[static_cast<std::size_t>(i)];
            double w = ws[static_cast<std::size_t>(i)];
            for (int k = 0; k < nb; ++k) {
                a(i, k) = w * cheb_t(2 * k, x);
            }
            b(i) = w * ys[static_cast<std::size_t>(i)];
        }
        Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
        Fit out;
        out.poly.coeffs.assign(static_cast<std::size_t>(deg + 1), 0.0);
        for (int k = 0; k < nb; ++k) {
            out.poly.coeffs[static_cast<std::size_t>(2 * k)] = c(k);
        }
        out.poly.degree = deg;
        out.poly.parity = Parity::even;
        double sup = 0.0;
        for (int i = 0; i < ncheck; ++i) {
            double y = static_cast<double>(i) / (ncheck - 1);
            sup = std::max(sup, std::abs(out.poly(y)));
        }
        if (sup > kSafety) {
            for (double &v : out.poly.coeffs) {
                v *= kSafety / sup;
            }
            sup = kSafety;
        }
        double err = 0.0;
        for (int i = 0; i < ncheck; ++i) {
            double x = delta + (1.0 - delta) * i / (ncheck - 1);
            err = std::max(err, std::abs(out.poly(x) - 0.5 * std::sqrt(x)));
        }
        out.poly.sup_error = err;
        out.ok = err <= eta && sup <= kSafety;
        return out;
    };

    int lo = 0;
    int hi = 2;
    Fit best = fit(hi);
    while (!best.ok) {
        lo = hi;
        if (hi >= kMaxApproxDegree) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "approx_half_sqrt: degree cap %d reached with sup-error %.12g", kMaxApproxDegree,
                          best.poly.sup_error);
            throw Error(buf);
        }
        hi = std::min(2 * hi, kMaxApproxDegree);
        best = fit(hi);
    }
    while (hi - lo > 2) {
        int mid = (lo + hi) / 2;
        mid -= mid % 2;
        Fit f = fit(mid);
        if (f.ok) {
            hi = mid;
            best = f;
        } else {
            lo = mid;
        }
    }
    return best.poly;
}

std::string PhaseFactors::to_json() const {
    nlohmann::json j;
    j["degree"] = degree();
    j["parity"] = parity_name(parity);
    j["convention"] = convention;
    j["phases"] = phases;
    j["residual"] = residual;
    return j.dump();
}

PhaseFactors PhaseFactors::from_json(const std::string &text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PhaseFactors pf;
    pf.phases = j.at("phases").get<std::vector<double>>();
    pf.convention = j.value("convention", std::string("Wx"));
    if (pf.convention != "Wx") {
        throw Error("phase factors: unsupported convention " + pf.convention);
    }
    std::string par = j.at("parity").get<std::string>();
    pf.parity = par == "even" ? Parity::even : par == "odd" ? Parity::odd : Parity::none;
    pf.residual = j.value("residual", 0.0);
    if (j.contains("degree") && j.at("degree").get<int>() != pf.degree()) {
        throw Error("phase factors: degree does not match phase count");
    }
    return pf;
}

PhaseFactors zero_phases(int d) {
    if (d < 0) {
        throw Error("zero_phases: negative degree");
    }
    PhaseFactors pf;
    pf.phases.assign(static_cast<std::size_t>(d + 1), 0.0);
    pf.parity = d % 2 == 0 ? Parity::even : Parity::odd;
    return pf;
}

PhaseFactors solve_phases(const ChebPoly &p_in) {
    ChebPoly p = p_in;
    while (p.coeffs.size() > 1 && p.coeffs.back() == 0.0) {
        p.coeffs.pop_back();
    }
    const int d = static_cast<int>(p.coeffs.size()) - 1;
    p.degree = d;
    Parity par = infer_parity(p.coeffs);
    if (par == Parity::none) {
        throw Error("solve_phases: polynomial has no definite parity");
    }
    if (p_in.parity != Parity::none && p_in.parity != par) {
        throw Error("solve_phases: declared parity does not match coefficients");
    }
    bool pure = std::abs(p.coeffs.back() - 1.0) <= 1e-14;
    for (int k = 0; k < d && pure; ++k) {
        pure = std::abs(p.coeffs[static_cast<std::size_t>(k)]) <= 1e-14;
    }
    if (pure) {
        PhaseFactors pf = zero_phases(d);
        pf.residual = validation_residual(pf.phases, p);
        return pf;
    }
    if (sup_norm(p) > 1.0) {
        throw Error("solve_phases: sup-norm exceeds 1; rescale the polynomial first");
    }
    const int reduced = (d + 2) / 2;
    Eigen::VectorXd r0 = Eigen::VectorXd::Zero(reduced);
    r0(0) = kPi / 4.0;
    if (d == 0) {
        r0(0) = std::acos(std::clamp(p.coeffs[0], -1.0, 1.0));
    }
    Rng rng(0x5150);
    double best_res = INFINITY;
    std::vector<double> best;
    for (int attempt = 0; attempt <= 10; ++attempt) {
        Eigen::VectorXd start = r0;
        if (attempt > 0) {
            for (int k = 0; k < reduced; ++k) {
                start(k) += 0.1 * rng.normal();
            }
        }
        std::vector<double> ph = newton_solve(p, d, start);
        double res = validation_residual(ph, p);
        if (res < best_res) {
            best_res = res;
            best = ph;
        }
        if (best_res <= 1e-8) {
            break;
        }
    }
    if (!(best_res <= 1e-8)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "solve_phases: no convergence, residual %.12g", best_res);
        throw Error(buf);
    }
    PhaseFactors pf;
    pf.phases = std::move(best);
    pf.parity = par;
    pf.residual = best_res;
    return pf;
}

CMatrix qsp_eval(const PhaseFactors &phi, double x) {
    if (phi.phases.empty()) {
        throw Error("qsp_eval: empty phase list");
    }
    if (x < -1.0 || x > 1.0) {
        throw Error("qsp_eval: x outside [-1, 1]");
    }
    Mat2 u = eval2(phi.phases, x);
    CMatrix m(2, 2);
    m << u.a, u.b, u.c, u.d;
    return m;
}

double qsp_poly(const PhaseFactors &phi, double x) { return eval2(phi.phases, x).a.real(); }

CMatrix qsvt_sequence(const PhaseFactors &phi, const BlockEncoding &be_in, int *uses) {
    const int d = phi.degree();
    if (d < 1) {
        throw Error("qsvt: degree must be at least 1");
    }
    Parity expected = d % 2 == 0 ? Parity::even : Parity::odd;
    if (phi.parity != Parity::none && phi.parity != expected) {
        throw Error("qsvt: parity mismatch between phases and degree");
    }
    BlockEncoding be = normalize_selectors(be_in);
    const Eigen::Index dim = be.U.rows();
    const Eigen::Index good = be.system_dim();
    std::vector<double> theta(static_cast<std::size_t>(d + 1));
    for (int j = 0; j <= d; ++j) {
        double shift = (j == 0 || j == d) ? kPi / 4.0 : kPi / 2.0;
        theta[static_cast<std::size_t>(j)] = phi.phases[static_cast<std::size_t>(j)] - shift;
    }
    auto scale_cols = [&](CMatrix &m, double t) {
        Complex in = std::polar(1.0, t), out = std::polar(1.0, -t);
        m.leftCols(good) *= in;
        m.rightCols(dim - good) *= out;
    };
    CMatrix m = identity(dim);
    scale_cols(m, theta[0]);
    CMatrix tmp(dim, dim);
    int count = 0;
    for (int k = 1; k <= d; ++k) {
        if ((d - k) % 2 == 0) {
            tmp.noalias() = m * be.U;
        } else {
            tmp.noalias() = m * be.U.adjoint();
        }
        m.swap(tmp);
        ++count;
        scale_cols(m, theta[static_cast<std::size_t>(k)]);
    }
    static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    m *= ipow[d % 4];
    if (uses != nullptr) {
        *uses = count;
    }
    return m;
}

BlockEncoding qsvt_apply(const PhaseFactors &phi, const BlockEncoding &be) {
    int uses = 0;
    CMatrix plus = qsvt_sequence(phi, be, &uses);
    PhaseFactors neg = phi;
    for (double &v : neg.phases) {
        v = -v;
    }
    CMatrix minus = qsvt_sequence(neg, be);
    const Eigen::Index dim = plus.rows();
    CMatrix u(2 * dim, 2 * dim);
    CMatrix sum = (plus + minus) * 0.5;
    CMatrix diff = (plus - minus) * 0.5;
    u.topLeftCorner(dim, dim) = sum;
    u.bottomRightCorner(dim, dim) = sum;
    u.topRightCorner(dim, dim) = diff;
    u.bottomLeftCorner(dim, dim) = diff;
    BlockEncoding out = make_encoding(std::move(u), be.a + 1, be.n);
    out.queries = static_cast<std::int64_t>(uses) * be.queries;
    return out;
}

BlockEncoding qsvt_chebyshev(const BlockEncoding &be, int d) {
    int uses = 0;
    CMatrix m = qsvt_sequence(zero_phases(d), be, &uses);
    BlockEncoding out = make_encoding(std::move(m), be.a, be.n);
    out.queries = static_cast<std::int64_t>(uses) * be.queries;
    return out;
}

}  // namespace bechain
