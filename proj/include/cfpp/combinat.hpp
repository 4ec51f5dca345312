#pragma once

#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cfpp {

/// Multiplicity vector (x_1, ..., x_m): x_j counts the parts of size j.
struct MultiplicityVector {
    std::vector<int> x;  ///< x[j-1] is the multiplicity of part size j

    int weighted_sum() const {
        int s = 0;
        for (std::size_t j = 0; j < x.size(); ++j) s += static_cast<int>(j + 1) * x[j];
        return s;
    }
    int part_count() const { return std::accumulate(x.begin(), x.end(), 0); }
};

/// Composition of an integer into ordered positive parts.
struct Composition {
    std::vector<int> parts;
};

/// Partitions of n as multiplicity vectors of length n, i.e. all
/// (x_1, ..., x_n) with sum j*x_j = n. Emitted in reverse-lexicographic
/// order of the underlying descending part lists: (n), (n-1,1), ...,
/// (1,...,1). Single-consumer lazy stream.
class PartitionEnumerator {
public:
    explicit PartitionEnumerator(int n) : n_(n) {
        detail::require(n >= 1, "PartitionEnumerator: n must be >= 1");
    }

    bool next(MultiplicityVector& out) {
        if (done_) return false;
        if (fresh_) {
            fresh_ = false;
            parts_ = {n_};
        } else if (!advance()) {
            done_ = true;
            return false;
        }
        emit(out);
        return true;
    }

private:
    bool advance() {
        // rightmost part > 1; everything after it is a run of ones
        int i = static_cast<int>(parts_.size()) - 1;
        while (i >= 0 && parts_[i] == 1) --i;
        if (i < 0) return false;
        const int ones = static_cast<int>(parts_.size()) - 1 - i;
        const int v = parts_[i] - 1;
        int rem = parts_[i] + ones;
        parts_.resize(i);
        while (rem >= v) {
            parts_.push_back(v);
            rem -= v;
        }
        if (rem > 0) parts_.push_back(rem);
        return true;
    }

    void emit(MultiplicityVector& out) const {
        out.x.assign(n_, 0);
        for (int p : parts_) ++out.x[p - 1];
    }

    int n_;
    std::vector<int> parts_;
    bool fresh_ = true;
    bool done_ = false;
};

/// Partitions of n into exactly k parts (the index set with fixed part
/// count), emitted as multiplicity vectors of length n in
/// reverse-lexicographic order of the descending part lists.
class KPartitionEnumerator {
public:
    KPartitionEnumerator(int n, int k) : n_(n), k_(k) {
        detail::require(n >= 1, "KPartitionEnumerator: n must be >= 1");
        detail::require(k >= 1 && k <= n, "KPartitionEnumerator: require 1 <= k <= n");
    }

    bool next(MultiplicityVector& out) {
        if (done_) return false;
        if (fresh_) {
            fresh_ = false;
            descend_from(0);
        } else if (!backtrack()) {
            done_ = true;
            return false;
        }
        out.x.assign(n_, 0);
        for (int p : parts_) ++out.x[p - 1];
        return true;
    }

private:
    // largest feasible value at depth d given the prefix
    int hi(int d, int rem) const {
        const int prev = d == 0 ? n_ - k_ + 1 : parts_[d - 1];
        return std::min(prev, rem - (k_ - d - 1));
    }
    static int ceil_div(int a, int b) { return (a + b - 1) / b; }

    void descend_from(int d) {
        int rem = n_;
        for (int i = 0; i < d; ++i) rem -= parts_[i];
        parts_.resize(d);
        for (; d < k_; ++d) {
            const int v = hi(d, rem);
            parts_.push_back(v);
            rem -= v;
        }
    }

    bool backtrack() {
        int d = k_ - 1;
        int rem = 0;  // weight not yet placed at depths >= d
        while (d >= 0) {
            rem += parts_[d];
            const int v = parts_[d] - 1;
            if (v >= 1 && v >= ceil_div(rem, k_ - d)) {
                parts_.resize(d);
                parts_.push_back(v);
                int left = rem - v;
                for (int i = d + 1; i < k_; ++i) {
                    const int w = hi(i, left);
                    parts_.push_back(w);
                    left -= w;
                }
                return true;
            }
            --d;
        }
        return false;
    }

    int n_;
    int k_;
    std::vector<int> parts_;
    bool fresh_ = true;
    bool done_ = false;
};

/// Truncated multiplicity vectors (x_1, ..., x_{n-k+1}) with
/// sum x_j = k and sum j*x_j = n. Bijective with the fixed-part-count
/// partitions of n by zero-padding; enumerated independently here by
/// constrained search over positions n-k+1 down to 1.
class TruncatedMultiplicityEnumerator {
public:
    TruncatedMultiplicityEnumerator(int n, int k) : n_(n), k_(k), m_(n - k + 1) {
        detail::require(n >= 1, "TruncatedMultiplicityEnumerator: n must be >= 1");
        detail::require(k >= 1 && k <= n, "TruncatedMultiplicityEnumerator: require 1 <= k <= n");
    }

    bool next(MultiplicityVector& out) {
        if (done_) return false;
        if (fresh_) {
            fresh_ = false;
            x_.assign(m_, 0);
            if (!descend(0, n_, k_)) {
                done_ = true;
                return false;
            }
        } else if (!backtrack()) {
            done_ = true;
            return false;
        }
        out.x = x_;
        return true;
    }

private:
    // depth d decides position j = m_ - d (stored at x_[j-1]); the value
    // window keeps (weight, count) feasible for the positions below j
    static int lo_val(int j, int rw, int rc) { return j == 1 ? rc : std::max(0, rw - rc * (j - 1)); }
    static int hi_val(int j, int rw, int rc) {
        if (j == 1) return rc;
        return std::min({rc, rw / j, (rw - rc) / (j - 1)});
    }

    bool feasible(int j, int rw, int rc) {
        // positions 1..j must absorb count rc and weight rw
        return rc >= 0 && rw >= rc && rw <= rc * j;
    }

    bool descend(int d, int rw, int rc) {
        for (; d < m_; ++d) {
            const int j = m_ - d;
            if (!feasible(j, rw, rc)) return false;
            const int v = hi_val(j, rw, rc);
            x_[j - 1] = v;
            rw -= j * v;
            rc -= v;
        }
        return rw == 0 && rc == 0;
    }

    bool backtrack() {
        int rw = 0, rc = 0;
        for (int d = m_ - 1; d >= 0; --d) {
            const int j = m_ - d;
            rw += j * x_[j - 1];
            rc += x_[j - 1];
            const int v = x_[j - 1] - 1;
            if (v >= lo_val(j, rw, rc) && descend_with(d, v, rw, rc)) return true;
        }
        return false;
    }

    bool descend_with(int d, int v, int rw, int rc) {
        const int j = m_ - d;
        x_[j - 1] = v;
        return descend(d + 1, rw - j * v, rc - v);
    }

    int n_;
    int k_;
    int m_;
    std::vector<int> x_;
    bool fresh_ = true;
    bool done_ = false;
};

/// Compositions of n into exactly k positive ordered parts, in
/// lexicographic order: (1,...,1,n-k+1) first, (n-k+1,1,...,1) last.
class CompositionEnumerator {
public:
    CompositionEnumerator(int n, int k) : n_(n), k_(k) {
        detail::require(n >= 1, "CompositionEnumerator: n must be >= 1");
        detail::require(k >= 1 && k <= n, "CompositionEnumerator: require 1 <= k <= n");
    }

    bool next(Composition& out) {
        if (done_) return false;
        if (fresh_) {
            fresh_ = false;
            parts_.assign(k_, 1);
            parts_.back() = n_ - k_ + 1;
        } else if (!advance()) {
            done_ = true;
            return false;
        }
        out.parts = parts_;
        return true;
    }

private:
    bool advance() {
        if (k_ == 1) return false;
        int m = k_ - 1;
        while (m >= 1 && parts_[m] == 1) --m;
        if (m < 1) return false;
        const int i = m - 1;
        int tail = 0;
        for (int j = i + 1; j < k_; ++j) tail += parts_[j];
        ++parts_[i];
        --tail;
        for (int j = i + 1; j < k_ - 1; ++j) {
            parts_[j] = 1;
            --tail;
        }
        parts_[k_ - 1] = tail;
        return true;
    }

    int n_;
    int k_;
    std::vector<int> parts_;
    bool fresh_ = true;
    bool done_ = false;
};

/// DP table of k-fold convolution powers of a jump law supported on
/// {1, 2, ...}: at(k, n) = Pr{X_1 + ... + X_k = n}. Masses c[j-1] beyond
/// the stored support are treated as zero, which is exact for n within
/// the table since every jump is at least 1.
class ConvolutionTable {
public:
    ConvolutionTable(std::span<const double> c, int k_max, int n_max)
        : k_max_(k_max), n_max_(n_max), p_((k_max + 1) * (n_max + 1), 0.0) {
        detail::require(k_max >= 1 && n_max >= 1, "ConvolutionTable: require k_max, n_max >= 1");
        for (int n = 1; n <= n_max; ++n)
            cell(1, n) = n <= static_cast<int>(c.size()) ? c[n - 1] : 0.0;
        for (int k = 2; k <= k_max; ++k)
            for (int n = k; n <= n_max; ++n) {
                double s = 0.0;
                for (int j = 1; j <= n - k + 1; ++j) {
                    if (j > static_cast<int>(c.size())) break;
                    s += c[j - 1] * cell(k - 1, n - j);
                }
                cell(k, n) = s;
            }
    }

    double at(int k, int n) const {
        detail::require(k >= 1 && k <= k_max_, "ConvolutionTable: k out of range");
        if (n < k) return 0.0;
        detail::require(n <= n_max_, "ConvolutionTable: n out of range");
        return p_[static_cast<std::size_t>(k) * (n_max_ + 1) + n];
    }

private:
    double& cell(int k, int n) { return p_[static_cast<std::size_t>(k) * (n_max_ + 1) + n]; }

    int k_max_;
    int n_max_;
    std::vector<double> p_;
};

/// k-fold convolution mass of a jump pmf at n. Jumps are >= 1, so the
/// value is 0 for n < k and only c_1..c_{n-k+1} can contribute.
inline double conv_power(const std::function<double(int)>& jump_pmf, int k, int n) {
    detail::require(k >= 1, "conv_power: k must be >= 1");
    detail::require(n >= 1, "conv_power: n must be >= 1");
    if (n < k) return 0.0;
    std::vector<double> c(n);
    for (int j = 1; j <= n; ++j) c[j - 1] = jump_pmf(j);
    return ConvolutionTable(c, k, n).at(k, n);
}

}  // namespace cfpp
