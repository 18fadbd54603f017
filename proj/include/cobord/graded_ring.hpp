#pragma once

// Finitely presented graded commutative rings with exact coefficients and
// per-weight normal forms.  Each graded piece within the declared caps is a
// finite list of monomials; relations act through Hermite (Z) or echelon (Q)
// reduction of the relation columns in that piece.  All values are immutable
// after construction.

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "lattice.hpp"

namespace cobord {

struct Generator {
    std::string name;
    int weight = 0;
};

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

// Row order for reduction tables: high-degree monomials first so that
// normal forms concentrate on the simplest monomials of each piece.
struct MonomialRowOrder {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

enum class Domain { Integers, Rationals };

class GradedRing;
using RingPtr = std::shared_ptr<const GradedRing>;

class RingElement {
public:
    RingElement() = default;
    RingElement(RingPtr ring, std::map<Exponents, Rat> terms)
        : ring_(std::move(ring)), terms_(std::move(terms)) {}

    const RingPtr& ring() const { return ring_; }
    const std::map<Exponents, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    Rat constant_term() const;

    bool operator==(const RingElement& o) const {
        return ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const RingElement& o) const { return !(*this == o); }
    // std::map needs an order; lexicographic on the term list.
    bool operator<(const RingElement& o) const { return terms_ < o.terms_; }

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator*(const Rat& c) const;
    RingElement pow(long n) const;

    // smallest m >= 1 with e^m = 0, if one exists below the ring's caps
    std::optional<int> nilpotency_order(int max_power) const;

    bool is_homogeneous(int* weight_out = nullptr) const;
    std::string str() const;

private:
    RingPtr ring_;
    std::map<Exponents, Rat> terms_;  // no zero coefficients, normal form
};

class GradedRing : public std::enable_shared_from_this<GradedRing> {
public:
    // Free graded ring. degree_cap < 0 means "derive": allowed only when all
    // generator weights are >= 1, in which case degree <= weight <= cap.
    static RingPtr free_ring(std::vector<Generator> gens, Domain domain, int weight_cap,
                             int degree_cap = -1) {
        auto r = std::shared_ptr<GradedRing>(new GradedRing());
        r->init(std::move(gens), {}, domain, weight_cap, degree_cap);
        return r;
    }

    // Quotient by homogeneous relations (elements of a ring with the same
    // generator list).  Relations of weight beyond the cap are accepted but
    // never apply inside the enumerated band.
    static RingPtr quotient(const RingPtr& base, const std::vector<RingElement>& relations) {
        auto r = std::shared_ptr<GradedRing>(new GradedRing());
        std::vector<std::map<Exponents, Rat>> rel;
        rel.reserve(relations.size());
        for (auto& e : relations) rel.push_back(e.terms());
        r->init(base->gens_, std::move(rel), base->domain_, base->weight_cap_,
                base->degree_cap_);
        return r;
    }

    // Same presentation over Q.
    static RingPtr rationalized(const RingPtr& base) {
        auto r = std::shared_ptr<GradedRing>(new GradedRing());
        r->init(base->gens_, base->relations_, Domain::Rationals, base->weight_cap_,
                base->degree_cap_);
        return r;
    }

    int num_generators() const { return (int)gens_.size(); }
    const Generator& generator(int i) const { return gens_[i]; }
    const std::vector<Generator>& generators() const { return gens_; }
    Domain domain() const { return domain_; }
    int weight_cap() const { return weight_cap_; }
    int degree_cap() const { return degree_cap_; }
    int weight_min() const { return weight_min_; }
    int weight_max() const { return weight_max_; }

    int generator_index(const std::string& name) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return (int)i;
        return -1;
    }

    int monomial_weight(const Exponents& e) const {
        int w = 0;
        for (std::size_t i = 0; i < e.size(); ++i) w += e[i] * gens_[i].weight;
        return w;
    }

    // declared annihilator exponent for generator i (0 = none):
    // relations of the exact shape x_i^k are tracked so that raw products can
    // drop monomials that are forced to vanish before cap checks apply
    int annihilator(int i) const { return annihilators_[i]; }

    // largest total degree a monomial can have without being annihilated
    int max_live_degree() const { return max_live_degree_; }

    const std::vector<RingElement>& relation_elements() const {
        if (!relation_cache_) {
            auto self = shared_from_this();
            auto cache = std::make_shared<std::vector<RingElement>>();
            for (auto& t : relations_) cache->push_back(RingElement(self, t));
            relation_cache_ = cache;
        }
        return *relation_cache_;
    }

    RingElement zero() const { return RingElement(shared_from_this(), {}); }
    RingElement constant(const Rat& c) const {
        return element({{Exponents(gens_.size(), 0), c}});
    }
    RingElement one() const { return constant(Rat(1)); }
    RingElement gen(int i) const {
        Exponents e(gens_.size(), 0);
        e[i] = 1;
        return element({{std::move(e), Rat(1)}});
    }
    RingElement gen(const std::string& name) const {
        int i = generator_index(name);
        if (i < 0) throw Error("unknown generator: " + name);
        return gen(i);
    }

    // Normal form of a raw term map (the only way elements enter the ring).
    RingElement element(std::map<Exponents, Rat> raw) const {
        return RingElement(shared_from_this(), normal_form_terms(std::move(raw)));
    }

    std::map<Exponents, Rat> normal_form_terms(std::map<Exponents, Rat> raw) const {
        // split by weight
        std::map<int, std::map<Exponents, Rat>> by_weight;
        for (auto& [e, c] : raw) {
            if (c == 0) continue;
            if (is_annihilated(e)) continue;
            if ((int)e.size() != (int)gens_.size()) throw Error("exponent arity mismatch");
            int w = monomial_weight(e);
            if (w < weight_min_ || w > weight_max_ || total_degree(e) > degree_cap_)
                throw WeightOverflowError("monomial outside ring caps: weight " +
                                          std::to_string(w) + ", degree " +
                                          std::to_string(total_degree(e)));
            Rat cc = c;
            cc.canonicalize();
            by_weight[w][e] = cc;
        }
        std::map<Exponents, Rat> out;
        for (auto& [w, part] : by_weight) {
            const Table& t = tables_.at(w);
            if (domain_ == Domain::Integers) {
                std::vector<Int> v(t.monos.size(), 0);
                for (auto& [e, c] : part) {
                    if (!is_integer(c))
                        throw Error("non-integral coefficient in integer ring: " +
                                    rat_to_string(c));
                    v[t.index.at(e)] = c.get_num();
                }
                t.zred->reduce_in_place(v);
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (v[i] != 0) out[t.monos[i]] = Rat(v[i]);
            } else {
                std::vector<Rat> v(t.monos.size(), Rat(0));
                for (auto& [e, c] : part) v[t.index.at(e)] = c;
                t.qred->reduce_in_place(v);
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (v[i] != 0) {
                        v[i].canonicalize();
                        out[t.monos[i]] = v[i];
                    }
            }
        }
        return out;
    }

    bool is_annihilated(const Exponents& e) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (annihilators_[i] > 0 && e[i] >= annihilators_[i]) return true;
        return false;
    }

    const std::vector<Exponents>& monomials_at_weight(int w) const {
        static const std::vector<Exponents> empty;
        auto it = tables_.find(w);
        return it == tables_.end() ? empty : it->second.monos;
    }

    // free rank of the graded piece at weight w
    int rank_at_weight(int w) const {
        auto it = tables_.find(w);
        if (it == tables_.end()) return 0;
        int n = (int)it->second.monos.size();
        int r = domain_ == Domain::Integers ? it->second.zred->rank() : it->second.qred->rank();
        return n - r;
    }

    std::vector<Int> torsion_at_weight(int w) const {
        auto it = tables_.find(w);
        if (it == tables_.end() || domain_ != Domain::Integers) return {};
        return it->second.zred->torsion();
    }

    bool same_presentation(const GradedRing& o) const {
        return gens_.size() == o.gens_.size() && domain_ == o.domain_ &&
               [&] {
                   for (std::size_t i = 0; i < gens_.size(); ++i)
                       if (gens_[i].name != o.gens_[i].name ||
                           gens_[i].weight != o.gens_[i].weight)
                           return false;
                   return true;
               }();
    }

private:
    GradedRing() = default;

    void init(std::vector<Generator> gens, std::vector<std::map<Exponents, Rat>> relations,
              Domain domain, int weight_cap, int degree_cap) {
        gens_ = std::move(gens);
        domain_ = domain;
        if (weight_cap < 0) throw Error("weight cap must be non-negative");
        weight_cap_ = weight_cap;
        bool has_nonpositive = false;
        for (auto& g : gens_)
            if (g.weight <= 0) has_nonpositive = true;
        if (degree_cap < 0) {
            if (has_nonpositive)
                throw Error("degree cap required when generator weights are not all positive");
            degree_cap = weight_cap;
        }
        degree_cap_ = degree_cap;
        weight_min_ = has_nonpositive ? -weight_cap_ : 0;
        weight_max_ = weight_cap_;

        annihilators_.assign(gens_.size(), 0);
        for (auto& rel : relations) {
            if (rel.empty()) continue;
            int w = 0;
            bool first = true;
            for (auto& [e, c] : rel) {
                if (c == 0) continue;
                int we = 0;
                for (std::size_t i = 0; i < e.size(); ++i) we += e[i] * gens_[i].weight;
                if (first) {
                    w = we;
                    first = false;
                } else if (we != w) {
                    throw Error("inhomogeneous relation");
                }
            }
            // pure-power relations x_i^k are annihilators
            if (rel.size() == 1) {
                auto& [e, c] = *rel.begin();
                int nz = -1, cnt = 0;
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i] > 0) {
                        nz = (int)i;
                        ++cnt;
                    }
                if (cnt == 1 && (c == 1 || c == -1)) {
                    int k = e[nz];
                    if (annihilators_[nz] == 0 || k < annihilators_[nz])
                        annihilators_[nz] = k;
                }
            }
        }
        relations_ = std::move(relations);

        max_live_degree_ = 0;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            max_live_degree_ += annihilators_[i] > 0 ? annihilators_[i] - 1 : degree_cap_;
        if (max_live_degree_ > degree_cap_) max_live_degree_ = degree_cap_;

        build_tables();
    }

    struct Table {
        std::vector<Exponents> monos;  // in MonomialRowOrder
        std::map<Exponents, int> index;
        std::unique_ptr<ZLattice> zred;
        std::unique_ptr<QLattice> qred;
    };

    void build_tables() {
        for (int w = weight_min_; w <= weight_max_; ++w) {
            Table t;
            std::vector<Exponents> monos;
            Exponents cur(gens_.size(), 0);
            enumerate(0, w, degree_cap_, cur, monos);
            std::sort(monos.begin(), monos.end(), MonomialRowOrder{});
            for (std::size_t i = 0; i < monos.size(); ++i) t.index[monos[i]] = (int)i;
            t.monos = std::move(monos);
            if (domain_ == Domain::Integers)
                t.zred = std::make_unique<ZLattice>((int)t.monos.size());
            else
                t.qred = std::make_unique<QLattice>((int)t.monos.size());
            tables_.emplace(w, std::move(t));
        }
        // populate relation columns: m * r for every monomial m that keeps the
        // product inside the enumerated box
        for (auto& rel : relations_) {
            if (rel.empty()) continue;
            int rw = 0;
            int rdeg_min = degree_cap_ + 1;
            for (auto& [e, c] : rel) {
                rw = monomial_weight(e);
                rdeg_min = std::min(rdeg_min, total_degree(e));
            }
            for (auto& [w, t] : tables_) {
                int mw = w - rw;
                auto mit = tables_.find(mw);
                if (mit == tables_.end()) continue;
                for (auto& m : mit->second.monos) {
                    if (total_degree(m) + max_rel_degree(rel) > degree_cap_) {
                        // the full product must stay inside the box
                        bool ok = true;
                        for (auto& [e, c] : rel) {
                            Exponents p = add(m, e);
                            if (!is_annihilated(p) && total_degree(p) > degree_cap_) {
                                ok = false;
                                break;
                            }
                        }
                        if (!ok) continue;
                    }
                    std::map<Exponents, Rat> col;
                    for (auto& [e, c] : rel) {
                        Exponents p = add(m, e);
                        if (is_annihilated(p)) continue;
                        col[p] += c;
                    }
                    bool nonzero = false;
                    for (auto& [e, c] : col)
                        if (c != 0) nonzero = true;
                    if (!nonzero) continue;
                    if (domain_ == Domain::Integers) {
                        std::vector<Int> v(t.monos.size(), 0);
                        for (auto& [e, c] : col)
                            if (c != 0) v[t.index.at(e)] = c.get_num();
                        t.zred->add_column(std::move(v));
                    } else {
                        std::vector<Rat> v(t.monos.size(), Rat(0));
                        for (auto& [e, c] : col)
                            if (c != 0) v[t.index.at(e)] = c;
                        t.qred->add_column(std::move(v));
                    }
                }
            }
        }
    }

    static Exponents add(const Exponents& a, const Exponents& b) {
        Exponents r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    }

    static int max_rel_degree(const std::map<Exponents, Rat>& rel) {
        int d = 0;
        for (auto& [e, c] : rel) d = std::max(d, total_degree(e));
        return d;
    }

    void enumerate(int gi, int weight_left, int degree_left, Exponents& cur,
                   std::vector<Exponents>& out) const {
        if (gi == (int)gens_.size()) {
            if (weight_left == 0) out.push_back(cur);
            return;
        }
        // feasibility prune over remaining generators
        int lo = 0, hi = 0;
        for (std::size_t i = gi; i < gens_.size(); ++i) {
            lo = std::min(lo, gens_[i].weight);
            hi = std::max(hi, gens_[i].weight);
        }
        if (weight_left < degree_left * lo || weight_left > degree_left * hi) return;
        int w = gens_[gi].weight;
        int maxe = degree_left;
        if (annihilators_.size() > (std::size_t)gi && annihilators_[gi] > 0)
            maxe = std::min(maxe, annihilators_[gi] - 1);
        for (int e = 0; e <= maxe; ++e) {
            cur[gi] = e;
            enumerate(gi + 1, weight_left - e * w, degree_left - e, cur, out);
        }
        cur[gi] = 0;
    }

    std::vector<Generator> gens_;
    std::vector<std::map<Exponents, Rat>> relations_;
    Domain domain_ = Domain::Integers;
    int weight_cap_ = 0;
    int degree_cap_ = 0;
    int weight_min_ = 0;
    int weight_max_ = 0;
    int max_live_degree_ = 0;
    std::vector<int> annihilators_;
    std::map<int, Table> tables_;
    mutable std::shared_ptr<std::vector<RingElement>> relation_cache_;
};

// --- RingElement members needing the ring definition ---

inline Rat RingElement::constant_term() const {
    if (!ring_) return Rat(0);
    return coeff(Exponents(ring_->num_generators(), 0));
}

inline RingElement RingElement::operator+(const RingElement& o) const {
    if (ring_ != o.ring_) throw IncompatibleError("ring mismatch in +");
    std::map<Exponents, Rat> raw = terms_;
    for (auto& [e, c] : o.terms_) raw[e] += c;
    return ring_->element(std::move(raw));
}

inline RingElement RingElement::operator-(const RingElement& o) const {
    if (ring_ != o.ring_) throw IncompatibleError("ring mismatch in -");
    std::map<Exponents, Rat> raw = terms_;
    for (auto& [e, c] : o.terms_) raw[e] -= c;
    return ring_->element(std::move(raw));
}

inline RingElement RingElement::operator-() const {
    std::map<Exponents, Rat> raw;
    for (auto& [e, c] : terms_) raw[e] = -c;
    return RingElement(ring_, std::move(raw));
}

inline RingElement RingElement::operator*(const RingElement& o) const {
    if (ring_ != o.ring_) throw IncompatibleError("ring mismatch in *");
    std::map<Exponents, Rat> raw;
    int n = ring_->num_generators();
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_) {
            Exponents e(n);
            for (int i = 0; i < n; ++i) e[i] = e1[i] + e2[i];
            if (ring_->is_annihilated(e)) continue;
            raw[std::move(e)] += c1 * c2;
        }
    return ring_->element(std::move(raw));
}

inline RingElement RingElement::operator*(const Rat& c) const {
    std::map<Exponents, Rat> raw;
    if (c != 0)
        for (auto& [e, k] : terms_) {
            Rat v = k * c;
            v.canonicalize();
            raw[e] = v;
        }
    return ring_ ? ring_->element(std::move(raw)) : RingElement(ring_, std::move(raw));
}

inline RingElement RingElement::pow(long n) const {
    if (n < 0) throw Error("negative power of ring element");
    RingElement r = ring_->one();
    RingElement b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = n > 1 ? b * b : b;
        n >>= 1;
    }
    return r;
}

inline std::optional<int> RingElement::nilpotency_order(int max_power) const {
    if (is_zero()) return 1;
    RingElement p = *this;
    for (int m = 1; m <= max_power; ++m) {
        if (p.is_zero()) return m;
        if (m == max_power) break;
        p = p * (*this);
    }
    if (p.is_zero()) return max_power + 1;
    return std::nullopt;
}

inline bool RingElement::is_homogeneous(int* weight_out) const {
    bool first = true;
    int w = 0;
    for (auto& [e, c] : terms_) {
        int we = ring_->monomial_weight(e);
        if (first) {
            w = we;
            first = false;
        } else if (we != w) {
            return false;
        }
    }
    if (weight_out && !first) *weight_out = w;
    return true;
}

inline std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    // lowest degree first, then lex
    std::vector<std::pair<Exponents, Rat>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [](auto& a, auto& b) {
        int da = total_degree(a.first), db = total_degree(b.first);
        if (da != db) return da < db;
        return a.first < b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : ts) {
        Rat a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string parts;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!parts.empty()) parts += "*";
            parts += ring_->generator((int)i).name;
            if (e[i] != 1) parts += "^" + std::to_string(e[i]);
        }
        if (parts.empty()) {
            os << rat_to_string(a);
        } else {
            if (a != 1) os << rat_to_string(a) << "*";
            os << parts;
        }
    }
    return os.str();
}

inline RingElement operator*(const Rat& c, const RingElement& e) { return e * c; }

// Move an element to a ring whose generators extend (by name) those of the
// element's ring.  Used for quotients, rationalization and coefficient
// inclusions into larger rings.
inline RingElement transfer(const RingElement& e, const RingPtr& dst) {
    const auto& src = *e.ring();
    std::vector<int> gen_map(src.num_generators());
    for (int i = 0; i < src.num_generators(); ++i) {
        int j = dst->generator_index(src.generator(i).name);
        if (j < 0 || dst->generator(j).weight != src.generator(i).weight)
            throw IncompatibleError("transfer: generator " + src.generator(i).name +
                                    " missing in target ring");
        gen_map[i] = j;
    }
    std::map<Exponents, Rat> raw;
    for (auto& [e1, c] : e.terms()) {
        Exponents e2(dst->num_generators(), 0);
        for (int i = 0; i < src.num_generators(); ++i) e2[gen_map[i]] = e1[i];
        raw[std::move(e2)] += c;
    }
    return dst->element(std::move(raw));
}

// --- ring homomorphisms ---

class RingHom {
public:
    // images: one element of dst per generator of src, by name.  Each image
    // must be homogeneous of weight scale * weight(gen) (zero allowed), and
    // must annihilate every relation of src within the caps.
    static RingHom create(RingPtr src, RingPtr dst,
                          const std::map<std::string, RingElement>& images,
                          int weight_scale = 1) {
        RingHom h;
        h.src_ = std::move(src);
        h.dst_ = std::move(dst);
        h.scale_ = weight_scale;
        h.images_.reserve(h.src_->num_generators());
        for (int i = 0; i < h.src_->num_generators(); ++i) {
            auto it = images.find(h.src_->generator(i).name);
            if (it == images.end())
                throw Error("ring_hom: no image for generator " + h.src_->generator(i).name);
            const RingElement& img = it->second;
            if (img.ring() != h.dst_) throw IncompatibleError("ring_hom: image in wrong ring");
            int w = 0;
            if (!img.is_homogeneous(&w))
                throw Error("ring_hom: image of " + h.src_->generator(i).name +
                            " is not homogeneous");
            if (!img.is_zero() && w != weight_scale * h.src_->generator(i).weight)
                throw Error("ring_hom: image of " + h.src_->generator(i).name +
                            " has wrong weight");
            h.images_.push_back(img);
        }
        for (auto& rel : h.src_->relation_elements()) {
            if (!h.apply(rel).is_zero())
                throw Error("ring_hom does not preserve relation: " + rel.str());
        }
        return h;
    }

    const RingPtr& src() const { return src_; }
    const RingPtr& dst() const { return dst_; }

    RingElement apply(const RingElement& e) const {
        if (e.ring() != src_) throw IncompatibleError("ring_hom applied to foreign element");
        RingElement out = dst_->zero();
        for (auto& [exp, c] : e.terms()) {
            RingElement m = dst_->constant(c);
            for (std::size_t i = 0; i < exp.size(); ++i)
                if (exp[i] > 0) m = m * images_[i].pow(exp[i]);
            out = out + m;
        }
        return out;
    }

private:
    RingPtr src_, dst_;
    std::vector<RingElement> images_;
    int scale_ = 1;
};

}  // namespace cobord
