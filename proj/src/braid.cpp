#include "zigzag/braid.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace zigzag {

BraidWord BraidWord::parse(const std::string& s) {
    BraidWord w;
    std::istringstream in(s);
    int x;
    while (in >> x) {
        if (x == 0) throw std::invalid_argument("BraidWord: letter 0");
        w.letters.push_back(x);
    }
    if (!in.eof()) throw std::invalid_argument("BraidWord: cannot parse '" + s + "'");
    return w;
}

std::string BraidWord::str() const {
    std::string out;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(letters[i]);
    }
    return out;
}

void BraidWord::check(int m) const {
    for (int l : letters)
        if (l == 0 || std::abs(l) > m)
            throw std::invalid_argument("BraidWord: letter out of range: " + std::to_string(l));
}

TwistedComplex apply_braid(const BraidWord& w, const TwistedComplex& start) {
    w.check(start.alg->m());
    TwistedComplex c = reduce(start);
    for (int l : w.letters) {
        c = (l > 0) ? twist(l, c) : untwist(-l, c);
        c = reduce(c);
    }
    return c;
}

TwistedComplex canonical_form(const TwistedComplex& c) {
    std::vector<int> order(c.size());
    for (int i = 0; i < c.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return c.gens[x] < c.gens[y]; });
    std::vector<int> pos(c.size());
    for (int i = 0; i < c.size(); ++i) pos[order[i]] = i;
    TwistedComplex out;
    out.alg = c.alg;
    for (int i = 0; i < c.size(); ++i) out.gens.push_back(c.gens[order[i]]);
    for (auto& [key, v] : c.entries) out.entries[{pos[key.first], pos[key.second]}] = v;
    return out;
}

bool same_up_to_permutation(const TwistedComplex& a, const TwistedComplex& b) {
    return canonical_form(a) == canonical_form(b);
}

std::string canonical_fingerprint(const TwistedComplex& c) {
    TwistedComplex k = canonical_form(c);
    std::string s;
    for (auto& g : k.gens)
        s += "P" + std::to_string(g.vertex) + "{" + std::to_string(g.ishift) + "}[" + std::to_string(g.jshift) + "];";
    for (auto& [key, v] : k.entries) {
        s += std::to_string(key.first) + "<-" + std::to_string(key.second) + ":";
        for (auto& [p, coeff] : v) s += k.alg->at(p).label + "*" + coeff.str() + ",";
        s += ";";
    }
    return s;
}

namespace {

// Realized underlying complexes and the realized linear map of an A-linear hom.
struct RealizedMap {
    std::map<int, int> dim0, dim1;                       // per-degree dims
    std::map<int, std::vector<std::pair<int, int>>> b0, b1; // per-degree (gen, path)
    std::map<int, SparseMatrix> mat;                     // degree k slice of the map (degree 0 maps)
};

std::map<int, std::vector<std::pair<int, int>>> realization_slices(const TwistedComplex& c) {
    std::map<int, std::vector<std::pair<int, int>>> out;
    const ZigzagAlgebra& a = *c.alg;
    for (int f = 0; f < c.size(); ++f)
        for (int p = 0; p < a.dim(); ++p)
            if (a.at(p).tgt == c.gens[f].vertex) out[c.gen_t(f) + a.at(p).deg].push_back({f, p});
    return out;
}

} // namespace

bool cone_is_acyclic(const TwistedComplex& c0, const TwistedComplex& c1, const Vec& hom_coeffs) {
    const ZigzagAlgebra& a = *c0.alg;
    DgHom h(c0, c1);
    auto s0 = realization_slices(c0);
    auto s1 = realization_slices(c1);
    // cone^d = C0^{d+1} (+) C1^d with differential [(-d0, 0), (phi, d1)].
    std::set<int> degrees;
    for (auto& [d, v] : s0) {
        degrees.insert(d - 1);
        degrees.insert(d);
    }
    for (auto& [d, v] : s1) {
        degrees.insert(d);
        degrees.insert(d - 1);
    }
    auto del0 = [&](int f, int p) { // honest differential components on realization of c0
        std::vector<std::tuple<int, int, Rational>> out;
        for (int g = 0; g < c0.size(); ++g)
            for (auto& [i, c] : c0.entry(g, f)) {
                auto prod = a.product(i, p);
                if (prod) out.push_back({g, prod->first, c * prod->second});
            }
        return out;
    };
    auto del1 = [&](int f, int p) {
        std::vector<std::tuple<int, int, Rational>> out;
        for (int g = 0; g < c1.size(); ++g)
            for (auto& [i, c] : c1.entry(g, f)) {
                auto prod = a.product(i, p);
                if (prod) out.push_back({g, prod->first, c * prod->second});
            }
        return out;
    };
    auto phi = [&](int f, int p) { // realized map components
        std::vector<std::tuple<int, int, Rational>> out;
        for (int i = 0; i < h.dim(); ++i) {
            if (hom_coeffs[i].is_zero()) continue;
            const auto& e = h.basis()[i];
            if (e.f0 != f) continue;
            auto prod = a.product(e.path, p);
            if (prod) out.push_back({e.f1, prod->first, hom_coeffs[i] * prod->second});
        }
        return out;
    };

    FiniteComplex cone;
    std::map<int, std::map<std::pair<int, int>, int>> pos0, pos1; // cone degree -> elt -> index
    for (int d : degrees) {
        int dim = 0;
        if (s0.count(d + 1))
            for (auto& e : s0[d + 1]) pos0[d][e] = dim++;
        if (s1.count(d))
            for (auto& e : s1[d]) pos1[d][e] = dim++;
        if (dim) cone.dims[d] = dim;
    }
    for (auto& [d, dim] : cone.dims) {
        if (!cone.dims.count(d + 1)) continue;
        SparseMatrix m(cone.dims[d + 1], dim);
        if (pos0.count(d))
            for (auto& [e, col] : pos0[d]) {
                for (auto& [g, q, c] : del0(e.first, e.second))
                    m.add(pos0[d + 1].at({g, q}), col, -c);
                for (auto& [g, q, c] : phi(e.first, e.second))
                    m.add(pos1[d + 1].at({g, q}), col, c);
            }
        if (pos1.count(d))
            for (auto& [e, col] : pos1[d])
                for (auto& [g, q, c] : del1(e.first, e.second))
                    m.add(pos1[d + 1].at({g, q}), col, c);
        cone.d[d] = std::move(m);
    }
    auto coh = cohomology(cone);
    for (auto& [d, v] : coh.dims)
        if (v != 0) return false;
    return true;
}

std::optional<QuasiIsoWitness> quasi_iso_search(const TwistedComplex& c0, const TwistedComplex& c1,
                                                int attempts, uint64_t seed) {
    DgHom h(c0, c1);
    FiniteComplex fc = h.total_complex();
    auto coh = cohomology(fc);
    if (!coh.dims.count(0) || coh.dims.at(0) == 0) return std::nullopt;
    const auto& reps = coh.reps.at(0);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int t = 0; t < attempts; ++t) {
        Vec v(h.dim(), Rational(0));
        bool nontrivial = false;
        for (auto& rep : reps) {
            int c = coeff(rng);
            if (c == 0) continue;
            nontrivial = true;
            Vec full = h.from_slice(0, rep);
            for (int i = 0; i < h.dim(); ++i) v[i] += Rational(c) * full[i];
        }
        if (!nontrivial) continue;
        if (cone_is_acyclic(c0, c1, v)) return QuasiIsoWitness{v};
    }
    return std::nullopt;
}

OrbitResult orbit_search(const TwistedComplex& start,
                         const std::function<bool(const TwistedComplex&)>& target, int depth,
                         int beam, int jobs) {
    OrbitResult res;
    TwistedComplex s = reduce(start);
    if (target(s)) {
        res.status = OrbitResult::Status::found;
        res.image = s;
        res.explored = 1;
        return res;
    }
    int m = start.alg->m();
    std::vector<int> letters;
    for (int k = 1; k <= m; ++k) letters.push_back(k);
    for (int k = 1; k <= m; ++k) letters.push_back(-k);

    struct Node {
        BraidWord word;
        TwistedComplex c;
    };
    std::vector<Node> frontier{{BraidWord{}, s}};
    std::set<std::string> seen{canonical_fingerprint(s)};
    long explored = 1;

    for (int d = 1; d <= depth; ++d) {
        std::vector<Node> candidates(frontier.size() * letters.size());
        std::vector<char> valid(candidates.size(), 0);
        auto expand = [&](size_t lo, size_t hi) {
            for (size_t idx = lo; idx < hi; ++idx) {
                const Node& node = frontier[idx / letters.size()];
                int letter = letters[idx % letters.size()];
                if (!node.word.letters.empty() && node.word.letters.back() == -letter) continue;
                Node nn;
                nn.word = node.word;
                nn.word.letters.push_back(letter);
                nn.c = reduce(letter > 0 ? twist(letter, node.c) : untwist(-letter, node.c));
                candidates[idx] = std::move(nn);
                valid[idx] = 1;
            }
        };
        size_t total = candidates.size();
        if (jobs > 1 && total > 1) {
            std::vector<std::thread> pool;
            size_t chunk = (total + jobs - 1) / jobs;
            for (int t = 0; t < jobs; ++t) {
                size_t lo = t * chunk, hi = std::min(total, lo + chunk);
                if (lo < hi) pool.emplace_back(expand, lo, hi);
            }
            for (auto& th : pool) th.join();
        } else {
            expand(0, total);
        }
        std::vector<Node> next;
        for (size_t i = 0; i < candidates.size(); ++i) {
            if (!valid[i]) continue;
            auto fp = canonical_fingerprint(candidates[i].c);
            if (!seen.insert(fp).second) continue;
            explored++;
            if (target(candidates[i].c)) {
                res.status = OrbitResult::Status::found;
                res.word = candidates[i].word;
                res.image = candidates[i].c;
                res.explored = explored;
                return res;
            }
            next.push_back(std::move(candidates[i]));
        }
        if (beam > 0 && (int)next.size() > beam) next.resize(beam);
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    res.status = OrbitResult::Status::exhausted;
    res.explored = explored;
    return res;
}

} // namespace zigzag
