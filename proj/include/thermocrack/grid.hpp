#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thermocrack {

enum class Side { negative, positive };

inline double side_sign(Side s) { return s == Side::negative ? -1.0 : 1.0; }

// Declared behaviour f ~ |x|^beta at the tip.
enum class TipBehavior { bounded, inverse_sqrt, sqrt };

inline double tip_exponent(TipBehavior t) {
    switch (t) {
        case TipBehavior::inverse_sqrt: return -0.5;
        case TipBehavior::sqrt: return 0.5;
        default: return 0.0;
    }
}

// Half-line x in (0, X] or [-X, 0), sampled at tip distances s_i = X (i/N)^g.
// All internal arithmetic is done in the tip distance s = |x|.
class HalfLineGrid {
public:
    HalfLineGrid() = default;

    static HalfLineGrid graded(Side side, double X, double grading, int N) {
        if (!(X > 0.0) || !std::isfinite(X)) throw std::invalid_argument("HalfLineGrid: X must be positive");
        if (!(grading >= 1.0)) throw std::invalid_argument("HalfLineGrid: grading must be >= 1");
        if (N < 16) throw std::invalid_argument("HalfLineGrid: need N >= 16");
        HalfLineGrid g;
        g.side_ = side;
        g.X_ = X;
        g.grading_ = grading;
        g.N_ = N;
        g.s_.resize(N);
        for (int i = 0; i < N; ++i) g.s_[i] = X * std::pow(double(i + 1) / N, grading);
        g.s_.back() = X;
        return g;
    }

    // Same spacing law continued out to factor * X (factor > 1); the first N
    // nodes coincide with this grid's nodes.
    HalfLineGrid extended(double factor) const {
        if (!(factor > 1.0)) throw std::invalid_argument("HalfLineGrid::extended: factor must exceed 1");
        HalfLineGrid g = *this;
        double i = N_;
        while (true) {
            i += 1.0;
            const double s = X_ * std::pow(i / N_, grading_);
            if (s >= factor * X_) break;
            g.s_.push_back(s);
        }
        g.s_.push_back(factor * X_);
        g.X_ = factor * X_;
        g.N_ = static_cast<int>(g.s_.size());
        return g;
    }

    Side side() const { return side_; }
    double sign() const { return side_sign(side_); }
    double truncation() const { return X_; }
    double grading() const { return grading_; }
    int size() const { return N_; }
    const std::vector<double>& distances() const { return s_; }
    double distance(int i) const { return s_[i]; }
    double coordinate(int i) const { return sign() * s_[i]; }

    std::vector<double> coordinates() const {
        std::vector<double> x(s_.size());
        for (std::size_t i = 0; i < s_.size(); ++i) x[i] = sign() * s_[i];
        return x;
    }

    // Index of the last node with s_i <= s, or -1 if s < s_0.
    int locate(double s) const {
        int lo = -1, hi = N_;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            if (s_[mid] <= s) lo = mid; else hi = mid;
        }
        return lo;
    }

private:
    Side side_ = Side::negative;
    double X_ = 1.0;
    double grading_ = 1.0;
    int N_ = 0;
    std::vector<double> s_;
};

// Samples of a function on one half-line. Between nodes the weighted function
// phi = f / s^beta is linear; on [0, s_0] it is extrapolated from the first two
// nodes. Beyond X either the supplied far field is used or a power law
// f(X) (X/s)^p fitted to the outermost samples.
struct GridFunction {
    HalfLineGrid grid;
    std::vector<double> values;
    TipBehavior tip = TipBehavior::bounded;
    std::function<double(double)> far_field;  // argument: tip distance s > X

    GridFunction() = default;
    GridFunction(HalfLineGrid g, std::vector<double> v, TipBehavior t = TipBehavior::bounded,
                 std::function<double(double)> far = {})
        : grid(std::move(g)), values(std::move(v)), tip(t), far_field(std::move(far)) {
        if (static_cast<int>(values.size()) != grid.size())
            throw std::invalid_argument("GridFunction: value count does not match grid");
        for (double x : values)
            if (!std::isfinite(x)) throw std::invalid_argument("GridFunction: non-finite sample");
    }

    // Sample a callable of the signed coordinate x.
    template <class F>
    static GridFunction sample(const HalfLineGrid& g, F&& f, TipBehavior t = TipBehavior::bounded,
                               bool analytic_tail = true) {
        std::vector<double> v(g.size());
        for (int i = 0; i < g.size(); ++i) v[i] = f(g.coordinate(i));
        std::function<double(double)> far;
        if (analytic_tail) {
            const double sg = g.sign();
            far = [f, sg](double s) { return f(sg * s); };
        }
        return GridFunction(g, std::move(v), t, std::move(far));
    }

    int size() const { return grid.size(); }
    double beta() const { return tip_exponent(tip); }

    std::vector<double> weighted() const {
        std::vector<double> phi(values.size());
        const double b = beta();
        for (std::size_t i = 0; i < values.size(); ++i)
            phi[i] = b == 0.0 ? values[i] : values[i] * std::pow(grid.distance(int(i)), -b);
        return phi;
    }

    // Decay exponent p of the power-law tail model.
    double tail_exponent() const {
        const int n = size();
        const int m = grid.locate(0.5 * grid.truncation());
        const double fN = values[n - 1], fM = values[std::max(m, 0)];
        const double sN = grid.distance(n - 1), sM = grid.distance(std::max(m, 0));
        if (fN == 0.0 || fM == 0.0 || (fN > 0) != (fM > 0) || sM >= sN) return 1.0;
        const double p = -std::log(fN / fM) / std::log(sN / sM);
        return std::clamp(p, 0.25, 6.0);
    }

    std::function<double(double)> tail() const {
        if (far_field) return far_field;
        const double X = grid.truncation(), fX = values.back(), p = tail_exponent();
        return [X, fX, p](double s) { return fX * std::pow(X / s, p); };
    }

    // Value at signed coordinate x (0 for the wrong side).
    double operator()(double x) const {
        const double s = grid.sign() * x;
        if (!(s > 0.0)) return 0.0;
        if (s > grid.truncation()) return tail()(s);
        const auto phi = [&](int i) {
            const double b = beta();
            return b == 0.0 ? values[i] : values[i] * std::pow(grid.distance(i), -b);
        };
        const int i = grid.locate(s);
        double w;
        if (i < 0) {
            const double s0 = grid.distance(0), s1 = grid.distance(1);
            w = phi(0) + (s - s0) * (phi(1) - phi(0)) / (s1 - s0);
        } else if (i >= size() - 1) {
            w = phi(size() - 1);
        } else {
            const double sa = grid.distance(i), sb = grid.distance(i + 1);
            w = phi(i) + (s - sa) * (phi(i + 1) - phi(i)) / (sb - sa);
        }
        return beta() == 0.0 ? w : w * std::pow(s, beta());
    }
};

}  // namespace thermocrack
