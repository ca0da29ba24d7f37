#include "zlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

std::mutex g_index_mutex;
std::map<std::pair<int, int>, std::vector<MultiIndex>> g_index_sets;

void enumerate_grade(int dim, int grade, int pos, MultiIndex cur,
                     std::vector<MultiIndex>& out) {
    if (pos == dim - 1) {
        cur.k[pos] = grade;
        out.push_back(cur);
        return;
    }
    for (int v = grade; v >= 0; --v) {  // first component descends
        cur.k[pos] = v;
        enumerate_grade(dim, grade - v, pos + 1, cur, out);
    }
}

} // namespace

const std::vector<MultiIndex>& multi_indices(int dim, int degree) {
    if (dim < 1 || dim > kMaxDim || degree < 0) {
        throw ParameterOutOfRange("multi_indices(dim=" + std::to_string(dim) +
                                  ", degree=" + std::to_string(degree) + ")");
    }
    std::lock_guard<std::mutex> lock(g_index_mutex);
    auto key = std::make_pair(dim, degree);
    auto it = g_index_sets.find(key);
    if (it == g_index_sets.end()) {
        std::vector<MultiIndex> v;
        for (int g = 0; g <= degree; ++g) {
            MultiIndex m;
            m.dim = dim;
            enumerate_grade(dim, g, 0, m, v);
        }
        it = g_index_sets.emplace(key, std::move(v)).first;
    }
    return it->second;
}

size_t multi_index_position(int dim, int degree, const MultiIndex& m) {
    const auto& list = multi_indices(dim, degree);
    for (size_t i = 0; i < list.size(); ++i) {
        if (list[i] == m) return i;
    }
    throw ParameterOutOfRange("multi-index outside the degree bound");
}

double binomial(int n, int j) {
    if (j < 0 || j > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= j; ++i) r = r * (n - j + i) / i;
    return std::round(r);
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Polynomial::Polynomial(int dim, int degree, Vec center)
    : dim_(dim), degree_(degree), center_(center) {
    coef_.assign(multi_indices(dim, degree).size(), 0.0);
}

double Polynomial::coefficient(const MultiIndex& m) const {
    return coef_[multi_index_position(dim_, degree_, m)];
}

void Polynomial::set_coefficient(const MultiIndex& m, double v) {
    coef_[multi_index_position(dim_, degree_, m)] = v;
}

double Polynomial::eval(const Vec& x) const {
    const auto& idx = multi_indices(dim_, degree_);
    double s = 0.0;
    for (size_t i = 0; i < idx.size(); ++i) {
        if (coef_[i] == 0.0) continue;
        double term = coef_[i];
        for (int a = 0; a < dim_; ++a) {
            for (int p = 0; p < idx[i].k[a]; ++p) term *= x[a] - center_[a];
        }
        s += term;
    }
    return s;
}

double Polynomial::eval_horner(const Vec& x) const {
    // dense (degree+1)^dim tensor, nested Horner per axis
    const auto& idx = multi_indices(dim_, degree_);
    const int n1 = degree_ + 1;
    if (dim_ == 1) {
        double v = x[0] - center_[0];
        std::array<double, 16> dense{};
        for (size_t i = 0; i < idx.size(); ++i) dense[idx[i].k[0]] = coef_[i];
        double s = 0.0;
        for (int p = degree_; p >= 0; --p) s = s * v + dense[p];
        return s;
    }
    if (dim_ == 2) {
        double v0 = x[0] - center_[0], v1 = x[1] - center_[1];
        std::vector<double> dense(static_cast<size_t>(n1) * n1, 0.0);
        for (size_t i = 0; i < idx.size(); ++i) {
            dense[static_cast<size_t>(idx[i].k[0]) * n1 + idx[i].k[1]] = coef_[i];
        }
        double s = 0.0;
        for (int a = degree_; a >= 0; --a) {
            double row = 0.0;
            for (int b = degree_; b >= 0; --b) {
                row = row * v1 + dense[static_cast<size_t>(a) * n1 + b];
            }
            s = s * v0 + row;
        }
        return s;
    }
    double v0 = x[0] - center_[0], v1 = x[1] - center_[1], v2 = x[2] - center_[2];
    std::vector<double> dense(static_cast<size_t>(n1) * n1 * n1, 0.0);
    for (size_t i = 0; i < idx.size(); ++i) {
        dense[(static_cast<size_t>(idx[i].k[0]) * n1 + idx[i].k[1]) * n1 + idx[i].k[2]] =
            coef_[i];
    }
    double s = 0.0;
    for (int a = degree_; a >= 0; --a) {
        double plane = 0.0;
        for (int b = degree_; b >= 0; --b) {
            double row = 0.0;
            for (int c = degree_; c >= 0; --c) {
                row = row * v2 + dense[(static_cast<size_t>(a) * n1 + b) * n1 + c];
            }
            plane = plane * v1 + row;
        }
        s = s * v0 + plane;
    }
    return s;
}

Polynomial Polynomial::recentered(const Vec& new_center) const {
    Polynomial out(dim_, degree_, new_center);
    const auto& idx = multi_indices(dim_, degree_);
    Vec delta = new_center - center_;  // x - old = (x - new) + delta
    for (size_t src = 0; src < idx.size(); ++src) {
        if (coef_[src] == 0.0) continue;
        const MultiIndex& kk = idx[src];
        // expand prod_i (u_i + delta_i)^{k_i}
        for (size_t dst = 0; dst < idx.size(); ++dst) {
            const MultiIndex& mm = idx[dst];
            bool ok = true;
            double w = 1.0;
            for (int a = 0; a < dim_ && ok; ++a) {
                if (mm.k[a] > kk.k[a]) {
                    ok = false;
                    break;
                }
                w *= binomial(kk.k[a], mm.k[a]);
                for (int p = 0; p < kk.k[a] - mm.k[a]; ++p) w *= delta[a];
            }
            if (ok) out.coef_[dst] += coef_[src] * w;
        }
    }
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.dim_ != dim_ || o.degree_ != degree_) {
        throw ParameterOutOfRange("polynomial shape mismatch in +=");
    }
    Polynomial tmp = o;
    if ((o.center_ - center_).norm() > 0.0) tmp = o.recentered(center_);
    for (size_t i = 0; i < coef_.size(); ++i) coef_[i] += tmp.coef_[i];
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    Polynomial neg = o;
    neg *= -1.0;
    return *this += neg;
}

Polynomial& Polynomial::operator*=(double s) {
    for (double& c : coef_) c *= s;
    return *this;
}

std::string Polynomial::to_json() const {
    nlohmann::json j;
    j["d"] = dim_;
    j["n"] = degree_;
    j["center"] = std::vector<double>(center_.x.begin(), center_.x.begin() + dim_);
    nlohmann::json coeffs = nlohmann::json::array();
    const auto& idx = multi_indices(dim_, degree_);
    for (size_t i = 0; i < idx.size(); ++i) {
        std::vector<int> k(idx[i].k.begin(), idx[i].k.begin() + dim_);
        coeffs.push_back({k, coef_[i]});
    }
    j["coeffs"] = coeffs;
    return j.dump();
}

Polynomial Polynomial::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int d = j.at("d").get<int>();
    int n = j.at("n").get<int>();
    Vec c = Vec::zero(d);
    auto cv = j.at("center").get<std::vector<double>>();
    for (int i = 0; i < d; ++i) c[i] = cv.at(i);
    Polynomial out(d, n, c);
    for (const auto& entry : j.at("coeffs")) {
        auto kv = entry.at(0).get<std::vector<int>>();
        MultiIndex m;
        m.dim = d;
        for (int i = 0; i < d; ++i) m.k[i] = kv.at(i);
        out.set_coefficient(m, entry.at(1).get<double>());
    }
    return out;
}

Polynomial linear_form_power(const Vec& e, const Vec& x0, int p, int degree_bound) {
    if (degree_bound < p) throw ParameterOutOfRange("degree bound below the power");
    Polynomial out(e.dim, degree_bound, x0);
    const auto& idx = multi_indices(e.dim, degree_bound);
    for (size_t i = 0; i < idx.size(); ++i) {
        if (idx[i].total() != p) continue;
        double w = factorial(p);
        for (int a = 0; a < e.dim; ++a) {
            w /= factorial(idx[i].k[a]);
            for (int q = 0; q < idx[i].k[a]; ++q) w *= e[a];
        }
        out.coefficients()[i] = w;
    }
    return out;
}

} // namespace zlab
