#pragma once

// Truncated multivariate power series over a GradedRing.  Variables carry a
// truncation weight (total degree is weighted; elementary-symmetric slots
// count with their index) and a ring weight used by homogeneity checks.
// Truncation is contagious: binary operations truncate to the smaller cap,
// and a series remembers whether any term has ever been dropped.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "graded_ring.hpp"

namespace cobord {

struct SeriesVar {
    std::string name;
    int trunc_weight = 1;
    int ring_weight = -1;

    bool operator==(const SeriesVar& o) const {
        return name == o.name && trunc_weight == o.trunc_weight && ring_weight == o.ring_weight;
    }
};

inline std::vector<SeriesVar> simple_vars(const std::vector<std::string>& names) {
    std::vector<SeriesVar> v;
    for (auto& n : names) v.push_back({n, 1, -1});
    return v;
}

class Series {
public:
    Series() = default;

    static Series zero(RingPtr ring, std::vector<SeriesVar> vars, int cap) {
        Series s;
        s.ring_ = std::move(ring);
        s.vars_ = std::move(vars);
        s.cap_ = cap;
        s.exact_ = true;
        return s;
    }

    static Series constant(RingPtr ring, std::vector<SeriesVar> vars, int cap, RingElement c) {
        Series s = zero(std::move(ring), std::move(vars), cap);
        if (!c.is_zero()) s.terms_[Exponents(s.vars_.size(), 0)] = std::move(c);
        return s;
    }

    static Series constant(RingPtr ring, std::vector<SeriesVar> vars, int cap, const Rat& c) {
        auto e = ring->constant(c);
        return constant(std::move(ring), std::move(vars), cap, std::move(e));
    }

    static Series variable(RingPtr ring, std::vector<SeriesVar> vars, int cap,
                           const std::string& name) {
        Series s = zero(ring, vars, cap);
        int i = s.var_index(name);
        if (i < 0) throw Error("unknown series variable: " + name);
        if (s.vars_[i].trunc_weight > cap)
            throw Error("variable weight exceeds cap: " + name);
        Exponents e(s.vars_.size(), 0);
        e[i] = 1;
        s.terms_[std::move(e)] = ring->one();
        return s;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<SeriesVar>& vars() const { return vars_; }
    int cap() const { return cap_; }
    bool exact() const { return exact_; }
    const std::map<Exponents, RingElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return (int)i;
        return -1;
    }

    int weighted_degree(const Exponents& e) const {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * vars_[i].trunc_weight;
        return d;
    }

    // smallest weighted degree of a nonzero term; cap+1 for the zero series
    int min_degree() const {
        int m = cap_ + 1;
        for (auto& [e, c] : terms_) m = std::min(m, weighted_degree(e));
        return m;
    }

    int max_var_exponent(int vi) const {
        int m = 0;
        for (auto& [e, c] : terms_) m = std::max(m, e[vi]);
        return m;
    }

    RingElement coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? ring_->zero() : it->second;
    }

    RingElement constant_term() const { return coeff(Exponents(vars_.size(), 0)); }

    bool operator==(const Series& o) const {
        return ring_ == o.ring_ && vars_ == o.vars_ && terms_ == o.terms_;
    }
    bool operator!=(const Series& o) const { return !(*this == o); }

    Series operator+(const Series& o) const {
        Series r = combined_frame(o);
        for (auto& [e, c] : terms_) r.accumulate(e, c);
        for (auto& [e, c] : o.terms_) r.accumulate(e, c);
        return r;
    }

    Series operator-(const Series& o) const {
        Series r = combined_frame(o);
        for (auto& [e, c] : terms_) r.accumulate(e, c);
        for (auto& [e, c] : o.terms_) r.accumulate(e, -c);
        return r;
    }

    Series operator-() const {
        Series r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    Series operator*(const Series& o) const {
        Series r = combined_frame(o);
        for (auto& [e1, c1] : terms_) {
            int d1 = weighted_degree(e1);
            for (auto& [e2, c2] : o.terms_) {
                if (d1 + o.weighted_degree(e2) > r.cap_) {
                    r.exact_ = false;
                    continue;
                }
                Exponents e(e1.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
                r.accumulate(std::move(e), c1 * c2);
            }
        }
        return r;
    }

    Series operator*(const RingElement& k) const {
        Series r = *this;
        std::map<Exponents, RingElement> out;
        for (auto& [e, c] : r.terms_) {
            RingElement v = c * k;
            if (!v.is_zero()) out[e] = std::move(v);
        }
        r.terms_ = std::move(out);
        return r;
    }

    Series operator*(const Rat& k) const {
        Series r = *this;
        std::map<Exponents, RingElement> out;
        for (auto& [e, c] : r.terms_) {
            RingElement v = c * k;
            if (!v.is_zero()) out[e] = std::move(v);
        }
        r.terms_ = std::move(out);
        return r;
    }

    Series pow(long n) const {
        if (n < 0) throw Error("negative series power");
        Series r = constant(ring_, vars_, cap_, ring_->one());
        Series b = *this;
        while (n > 0) {
            if (n & 1) r = r * b;
            if (n >>= 1) b = b * b;
        }
        return r;
    }

    Series truncated(int new_cap) const {
        Series r = zero(ring_, vars_, std::min(new_cap, cap_));
        r.exact_ = exact_;
        for (auto& [e, c] : terms_) {
            if (weighted_degree(e) > r.cap_)
                r.exact_ = false;
            else
                r.terms_[e] = c;
        }
        return r;
    }

    // Composition: every variable of *this must be assigned a series in the
    // (mutually identical) frame of the assignments.  A substituted series
    // with a nonzero constant term is only allowed when *this is exact, or
    // when each assignment respects the variable's truncation weight.
    Series substitute(const std::map<std::string, Series>& assignments) const {
        if (terms_.empty() && !assignments.empty()) {
            auto& any = assignments.begin()->second;
            Series r = zero(any.ring_, any.vars_, std::min(cap_, any.cap_));
            r.exact_ = exact_;
            return r;
        }
        std::vector<const Series*> subst(vars_.size(), nullptr);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = assignments.find(vars_[i].name);
            if (it == assignments.end())
                throw Error("substitute: no assignment for variable " + vars_[i].name);
            subst[i] = &it->second;
        }
        const Series& frame = *subst[0];
        int rcap = std::min(cap_, frame.cap_);
        for (auto s : subst) {
            if (s->ring_ != frame.ring_ || !(s->vars_ == frame.vars_))
                throw IncompatibleError("substitute: assignment frames differ");
            rcap = std::min(rcap, s->cap_);
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (!subst[i]->constant_term().is_zero() && !exact_)
                throw Error("substitute: nonzero constant term assigned to variable " +
                            vars_[i].name + " of a truncated series");
            if (exact_) continue;
            if (subst[i]->min_degree() < vars_[i].trunc_weight)
                throw Error("substitute: assignment for " + vars_[i].name +
                            " drops below the variable weight");
        }

        Series acc = zero(frame.ring_, frame.vars_, rcap);
        acc.exact_ = exact_;
        // memoized powers per variable
        std::vector<std::vector<Series>> powers(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            powers[i].push_back(constant(frame.ring_, frame.vars_, rcap, frame.ring_->one()));
        auto power = [&](std::size_t i, int e) -> const Series& {
            while ((int)powers[i].size() <= e) {
                Series next = powers[i].back() * subst[i]->truncated(rcap);
                powers[i].push_back(std::move(next));
            }
            return powers[i][e];
        };
        for (auto& [e, c] : terms_) {
            Series term = constant(frame.ring_, frame.vars_, rcap, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) term = term * power(i, e[i]);
            acc = acc + term;
        }
        return acc;
    }

    // Evaluation at ring elements.  Substituted values must have zero
    // constant term; for a truncated series the values' nilpotency must
    // guarantee every dropped term evaluates to zero.
    RingElement eval(const std::map<std::string, RingElement>& values) const {
        std::vector<const RingElement*> vals(vars_.size(), nullptr);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = values.find(vars_[i].name);
            if (it == values.end())
                throw Error("eval: no value for variable " + vars_[i].name);
            vals[i] = &it->second;
            if (!it->second.constant_term().is_zero() && !exact_)
                throw Error("eval: nonzero constant value for " + vars_[i].name +
                            " of a truncated series");
        }
        if (!exact_) {
            // bound on the weighted degree of any multi-exponent whose
            // evaluation can survive
            long bound = 0;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                auto ord = vals[i]->nilpotency_order(ring_for(vals)->max_live_degree() + 1);
                if (!ord)
                    throw Error("eval: value for " + vars_[i].name +
                                " not verifiably nilpotent");
                bound += (long)vars_[i].trunc_weight * (*ord - 1);
            }
            if (bound > cap_)
                throw Error("eval: series cap " + std::to_string(cap_) +
                            " insufficient, need " + std::to_string(bound));
        }
        const RingPtr& R = ring_for(vals);
        RingElement acc = R->zero();
        std::vector<std::vector<RingElement>> powers(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) powers[i].push_back(R->one());
        auto power = [&](std::size_t i, int e) -> const RingElement& {
            while ((int)powers[i].size() <= e)
                powers[i].push_back(powers[i].back() * (*vals[i]));
            return powers[i][e];
        };
        for (auto& [e, c] : terms_) {
            RingElement t = transfer_or_same(c, R);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t = t * power(i, e[i]);
            acc = acc + t;
        }
        return acc;
    }

    bool is_homogeneous(int* weight_out = nullptr) const {
        bool first = true;
        int w0 = 0;
        for (auto& [e, c] : terms_) {
            int wc = 0;
            if (!c.is_homogeneous(&wc)) return false;
            for (std::size_t i = 0; i < e.size(); ++i) wc += e[i] * vars_[i].ring_weight;
            if (first) {
                w0 = wc;
                first = false;
            } else if (wc != w0) {
                return false;
            }
        }
        if (weight_out && !first) *weight_out = w0;
        return true;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Exponents, RingElement>> ts(terms_.begin(), terms_.end());
        std::sort(ts.begin(), ts.end(), [this](auto& a, auto& b) {
            int da = weighted_degree(a.first), db = weighted_degree(b.first);
            if (da != db) return da < db;
            return a.first < b.first;
        });
        std::string out;
        bool first = true;
        for (auto& [e, c] : ts) {
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i].name;
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            std::string cs = c.str();
            bool wrap = cs.find(' ') != std::string::npos;
            if (!first) out += " + ";
            first = false;
            if (mono.empty()) {
                out += wrap ? "(" + cs + ")" : cs;
            } else if (cs == "1") {
                out += mono;
            } else if (cs == "-1") {
                out += "-" + mono;
            } else {
                out += (wrap ? "(" + cs + ")" : cs) + "*" + mono;
            }
        }
        return out;
    }

    // direct term installation (used by constructors of known expansions)
    void set_term(Exponents e, RingElement c) {
        if (weighted_degree(e) > cap_)
            throw Error("set_term beyond cap");
        if (c.is_zero())
            terms_.erase(e);
        else
            terms_[std::move(e)] = std::move(c);
    }

    void mark_truncated() { exact_ = false; }

private:
    Series combined_frame(const Series& o) const {
        if (ring_ != o.ring_) throw IncompatibleError("series ring mismatch");
        if (!(vars_ == o.vars_)) throw IncompatibleError("series variable mismatch");
        Series r = zero(ring_, vars_, std::min(cap_, o.cap_));
        r.exact_ = exact_ && o.exact_;
        if (cap_ != o.cap_) {
            // the operand with the larger cap may carry terms beyond the
            // common cap; they are dropped below
        }
        return r;
    }

    void accumulate(Exponents e, RingElement c) {
        if (c.is_zero()) return;
        if (weighted_degree(e) > cap_) {
            exact_ = false;
            return;
        }
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const RingPtr& ring_for(const std::vector<const RingElement*>& vals) const {
        return vals.empty() ? ring_ : vals[0]->ring();
    }

    static RingElement transfer_or_same(const RingElement& c, const RingPtr& dst) {
        return c.ring() == dst ? c : transfer(c, dst);
    }

    RingPtr ring_;
    std::vector<SeriesVar> vars_;
    int cap_ = 0;
    bool exact_ = true;
    std::map<Exponents, RingElement> terms_;
};

inline Series operator*(const RingElement& k, const Series& s) { return s * k; }
inline Series operator*(const Rat& k, const Series& s) { return s * k; }

// --- one-variable utilities ---

// exp(x) - 1 over a Q-algebra
inline Series exp_minus_one(const RingPtr& ring, const std::vector<SeriesVar>& vars, int cap,
                            const std::string& var) {
    if (ring->domain() != Domain::Rationals)
        throw Error("exp requires rational coefficients");
    Series s = Series::zero(ring, vars, cap);
    int vi = s.var_index(var);
    if (vi < 0) throw Error("unknown variable " + var);
    int w = vars[vi].trunc_weight;
    for (int n = 1; n * w <= cap; ++n) {
        Exponents e(vars.size(), 0);
        e[vi] = n;
        s.set_term(std::move(e), ring->constant(Rat(1) / Rat(factorial(n))));
    }
    s.mark_truncated();
    return s;
}

// log(1+x) over a Q-algebra
inline Series log_one_plus(const RingPtr& ring, const std::vector<SeriesVar>& vars, int cap,
                           const std::string& var) {
    if (ring->domain() != Domain::Rationals)
        throw Error("log requires rational coefficients");
    Series s = Series::zero(ring, vars, cap);
    int vi = s.var_index(var);
    if (vi < 0) throw Error("unknown variable " + var);
    int w = vars[vi].trunc_weight;
    for (int n = 1; n * w <= cap; ++n) {
        Exponents e(vars.size(), 0);
        e[vi] = n;
        Rat c = Rat(n % 2 == 1 ? 1 : -1) / Rat(n);
        s.set_term(std::move(e), ring->constant(c));
    }
    s.mark_truncated();
    return s;
}

// multiplicative inverse of a series with unit constant term
inline Series invert_unit_series(const Series& s) {
    RingElement c0 = s.constant_term();
    Rat u = c0.constant_term();
    if (c0.terms().size() != 1 || u == 0 || !c0.coeff(Exponents(s.ring()->num_generators(), 0))
        .operator==(u))
        throw Error("invert: constant term is not a unit constant");
    if (s.ring()->domain() == Domain::Integers && !(u == 1 || u == -1))
        throw Error("invert: constant term not invertible over the integers");
    // 1/(u + t) = (1/u) * sum (-t/u)^k
    Series t = s - Series::constant(s.ring(), s.vars(), s.cap(), c0);
    Rat uinv = Rat(1) / u;
    Series mt = t * (-uinv);
    Series acc = Series::constant(s.ring(), s.vars(), s.cap(), uinv);
    Series term = Series::constant(s.ring(), s.vars(), s.cap(), uinv);
    int md = std::max(1, mt.min_degree());
    for (int k = 1; k * md <= s.cap(); ++k) {
        term = term * mt;
        if (term.is_zero()) break;
        acc = acc + term;
    }
    acc.mark_truncated();
    return acc;
}

// Reversion of g = u*x + O(x^2), u an invertible constant: returns h with
// g(h(x)) = h(g(x)) = x up to the cap.
inline Series reversion(const Series& g, const std::string& var) {
    int vi = g.var_index(var);
    if (vi < 0) throw Error("reversion: unknown variable " + var);
    for (std::size_t i = 0; i < g.vars().size(); ++i)
        if ((int)i != vi && g.max_var_exponent((int)i) > 0)
            throw Error("reversion: series must be univariate");
    if (!g.constant_term().is_zero()) throw Error("reversion: nonzero constant term");
    Exponents lin(g.vars().size(), 0);
    lin[vi] = 1;
    RingElement ue = g.coeff(lin);
    Rat u = ue.constant_term();
    if (ue.is_zero() || ue.terms().size() != 1 || u == 0 ||
        total_degree(ue.terms().begin()->first) != 0)
        throw Error("reversion: non-invertible linear coefficient");
    if (g.ring()->domain() == Domain::Integers && !(u == 1 || u == -1))
        throw Error("reversion: non-invertible linear coefficient");
    Rat uinv = Rat(1) / u;

    Series h = Series::variable(g.ring(), g.vars(), g.cap(), var) * uinv;
    for (int k = 2; k <= g.cap(); ++k) {
        Series comp = g.substitute({{var, h}});
        Series err = comp - Series::variable(g.ring(), g.vars(), g.cap(), var);
        Exponents ek(g.vars().size(), 0);
        ek[vi] = k;
        RingElement ck = err.coeff(ek);
        if (ck.is_zero()) continue;
        Series corr = Series::zero(g.ring(), g.vars(), g.cap());
        corr.set_term(ek, ck * (-uinv));
        h = h + corr;
    }
    h.mark_truncated();
    return h;
}

// elementary symmetric polynomial e_k of the given variables, as a series
inline Series elementary_symmetric(const RingPtr& ring, const std::vector<SeriesVar>& vars,
                                   int cap, const std::vector<std::string>& mu, int k) {
    int r = (int)mu.size();
    if (k < 0 || k > r) throw Error("elementary_symmetric: index out of range");
    Series acc = Series::zero(ring, vars, cap);
    std::vector<int> idx(k);
    // iterate over k-subsets of mu
    std::vector<int> sel(k);
    for (int i = 0; i < k; ++i) sel[i] = i;
    if (k == 0) return Series::constant(ring, vars, cap, ring->one());
    while (true) {
        Series term = Series::constant(ring, vars, cap, ring->one());
        for (int i = 0; i < k; ++i)
            term = term * Series::variable(ring, vars, cap, mu[sel[i]]);
        acc = acc + term;
        int i = k - 1;
        while (i >= 0 && sel[i] == r - k + i) --i;
        if (i < 0) break;
        ++sel[i];
        for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
    }
    return acc;
}

// Rewrite a series symmetric in the mu variables as a series in the
// elementary symmetric slots s_1..s_r (trunc weight i) and the remaining
// variables.  Classical leading-monomial elimination.
inline Series sym_reduce(const Series& f, const std::vector<std::string>& mu,
                         const std::vector<std::string>& s_names) {
    int r = (int)mu.size();
    if ((int)s_names.size() != r) throw Error("sym_reduce: name count mismatch");
    std::vector<int> mi(r);
    for (int i = 0; i < r; ++i) {
        mi[i] = f.var_index(mu[i]);
        if (mi[i] < 0) throw Error("sym_reduce: unknown variable " + mu[i]);
        if (f.vars()[mi[i]].trunc_weight != 1)
            throw Error("sym_reduce: symmetric variables must have weight 1");
    }
    // symmetry check on adjacent transpositions
    for (int i = 0; i + 1 < r; ++i) {
        std::map<Exponents, RingElement> swapped;
        for (auto& [e, c] : f.terms()) {
            Exponents e2 = e;
            std::swap(e2[mi[i]], e2[mi[i + 1]]);
            swapped[std::move(e2)] = c;
        }
        if (!(swapped == f.terms()))
            throw NotSymmetricError("series not symmetric under swap of " + mu[i] + "," +
                                    mu[i + 1]);
    }

    int rw = r > 0 ? f.vars()[mi[0]].ring_weight : -1;
    std::vector<SeriesVar> out_vars;
    for (int i = 0; i < r; ++i) out_vars.push_back({s_names[i], i + 1, (i + 1) * rw});
    std::vector<int> extra_idx;
    for (std::size_t i = 0; i < f.vars().size(); ++i) {
        bool is_mu = false;
        for (int j = 0; j < r; ++j)
            if ((int)i == mi[j]) is_mu = true;
        if (!is_mu) {
            out_vars.push_back(f.vars()[i]);
            extra_idx.push_back((int)i);
        }
    }

    Series rem = f;
    Series out = Series::zero(f.ring(), out_vars, f.cap());
    out.mark_truncated();
    if (f.exact()) out = Series::zero(f.ring(), out_vars, f.cap());

    while (!rem.is_zero()) {
        // lex-greatest mu-exponent among the remaining terms
        Exponents best_mu;
        bool found = false;
        for (auto& [e, c] : rem.terms()) {
            Exponents me(r);
            for (int j = 0; j < r; ++j) me[j] = e[mi[j]];
            if (!found || me > best_mu) {
                best_mu = me;
                found = true;
            }
        }
        for (int j = 0; j + 1 < r; ++j)
            if (best_mu[j] < best_mu[j + 1])
                throw NotSymmetricError("sym_reduce: leading exponent not a partition");

        // collect the coefficient (in extras) of that mu-pattern
        Series coeff_part = Series::zero(f.ring(), f.vars(), f.cap());
        for (auto& [e, c] : rem.terms()) {
            bool match = true;
            for (int j = 0; j < r; ++j)
                if (e[mi[j]] != best_mu[j]) match = false;
            if (!match) continue;
            Exponents e2 = e;
            for (int j = 0; j < r; ++j) e2[mi[j]] = 0;
            coeff_part.set_term(std::move(e2), c);
        }

        // s-monomial prod s_i^(lambda_i - lambda_{i+1})
        Exponents sexp(out_vars.size(), 0);
        for (int j = 0; j < r; ++j) {
            int next = j + 1 < r ? best_mu[j + 1] : 0;
            sexp[j] = best_mu[j] - next;
        }
        // its expansion back in mu variables
        Series expansion = Series::constant(f.ring(), f.vars(), f.cap(), f.ring()->one());
        for (int j = 0; j < r; ++j)
            if (sexp[j] > 0)
                expansion =
                    expansion *
                    elementary_symmetric(f.ring(), f.vars(), f.cap(), mu, j + 1).pow(sexp[j]);
        rem = rem - coeff_part * expansion;

        // install terms: s-monomial times each extra part
        for (auto& [e2, c] : coeff_part.terms()) {
            Exponents oe = sexp;
            for (std::size_t k = 0; k < extra_idx.size(); ++k) oe[r + k] = e2[extra_idx[k]];
            out.set_term(std::move(oe), c);
        }
    }
    return out;
}

// substitute s_i -> e_i(mu) back; target frame: mu variables plus extras
inline Series expand_elementary(const Series& h, const std::vector<std::string>& s_names,
                                const std::vector<std::string>& mu,
                                const std::vector<SeriesVar>& target_vars) {
    std::map<std::string, Series> assign;
    for (std::size_t i = 0; i < s_names.size(); ++i)
        assign[s_names[i]] =
            elementary_symmetric(h.ring(), target_vars, h.cap(), mu, (int)i + 1);
    for (auto& v : h.vars()) {
        bool is_s = false;
        for (auto& sn : s_names)
            if (v.name == sn) is_s = true;
        if (!is_s) assign[v.name] = Series::variable(h.ring(), target_vars, h.cap(), v.name);
    }
    return h.substitute(assign);
}

}  // namespace cobord
