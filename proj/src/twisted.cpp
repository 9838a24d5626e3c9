#include "zigzag/twisted.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace zigzag {

TwistedComplex TwistedComplex::projective(const ZigzagAlgebra& a, int vertex, int ishift, int jshift) {
    TwistedComplex c;
    c.alg = &a;
    c.gens.push_back({vertex, ishift, jshift});
    return c;
}

void TwistedComplex::set_entry(int to, int from, const AlgElem& value) {
    AlgElem v;
    for (auto& [i, c] : value)
        if (!c.is_zero()) v[i] = c;
    if (v.empty()) {
        entries.erase({to, from});
        return;
    }
    if (to == from) throw std::invalid_argument("TwistedComplex: diagonal entry breaks strict triangularity");
    const TwGen& g0 = gens[from];
    const TwGen& g1 = gens[to];
    for (auto& [i, c] : v) {
        const auto& b = alg->at(i);
        if (b.src != g0.vertex || b.tgt != g1.vertex)
            throw std::invalid_argument("TwistedComplex: entry endpoints mismatch");
        if (gen_r(to) != gen_r(from) + 1)
            throw std::invalid_argument("TwistedComplex: entry must raise the first degree by one");
        if (gen_s(to) + b.deg != gen_s(from))
            throw std::invalid_argument("TwistedComplex: entry breaks the second grading");
    }
    entries[{to, from}] = std::move(v);
}

AlgElem TwistedComplex::entry(int to, int from) const {
    auto it = entries.find({to, from});
    return it == entries.end() ? AlgElem{} : it->second;
}

bool TwistedComplex::maurer_cartan(std::string* why) const {
    for (int g0 = 0; g0 < size(); ++g0)
        for (int g2 = 0; g2 < size(); ++g2) {
            AlgElem acc;
            for (int g1 = 0; g1 < size(); ++g1) {
                auto a = entry(g2, g1);
                auto b = entry(g1, g0);
                if (a.empty() || b.empty()) continue;
                AlgElem p = alg->multiply(a, b);
                for (auto& [i, c] : p) {
                    acc[i] += c;
                    if (acc[i].is_zero()) acc.erase(i);
                }
            }
            if (!acc.empty()) {
                if (why) *why = "D*D != 0 from generator " + std::to_string(g0) + " to " + std::to_string(g2);
                return false;
            }
        }
    return true;
}

bool TwistedComplex::strictly_triangular(std::string* why) const {
    std::vector<int> indeg(size(), 0);
    for (auto& [k, v] : entries) indeg[k.first]++;
    std::queue<int> q;
    for (int i = 0; i < size(); ++i)
        if (indeg[i] == 0) q.push(i);
    int seen = 0;
    std::vector<std::vector<int>> out(size());
    for (auto& [k, v] : entries) out[k.second].push_back(k.first);
    while (!q.empty()) {
        int g = q.front();
        q.pop();
        seen++;
        for (int h : out[g])
            if (--indeg[h] == 0) q.push(h);
    }
    if (seen != size()) {
        if (why) *why = "differential relation has a cycle";
        return false;
    }
    return true;
}

void TwistedComplex::validate() const {
    std::string why;
    if (!strictly_triangular(&why)) throw std::logic_error("TwistedComplex: " + why);
    if (!maurer_cartan(&why)) throw std::logic_error("TwistedComplex: " + why);
}

TwistedComplex TwistedComplex::shifted(int di, int dj) const {
    TwistedComplex c = *this;
    for (auto& g : c.gens) {
        g.ishift += di;
        g.jshift += dj;
    }
    return c;
}

TwistedComplex direct_sum(const TwistedComplex& a, const TwistedComplex& b) {
    TwistedComplex c = a;
    int off = a.size();
    for (auto& g : b.gens) c.gens.push_back(g);
    for (auto& [k, v] : b.entries) c.entries[{k.first + off, k.second + off}] = v;
    return c;
}

bool operator==(const TwistedComplex& a, const TwistedComplex& b) {
    return a.alg == b.alg && a.gens == b.gens && a.entries == b.entries;
}

AInfModule TwistedComplex::realize() const {
    AInfModule m;
    m.alg = alg;
    std::map<std::pair<int, int>, int> pos;
    for (int f = 0; f < size(); ++f)
        for (int p = 0; p < alg->dim(); ++p) {
            if (alg->at(p).tgt != gens[f].vertex) continue;
            pos[{f, p}] = m.dim();
            m.basis.push_back({"g" + std::to_string(f) + "." + alg->at(p).label,
                               gen_t(f) + alg->at(p).deg, alg->at(p).src,
                               gen_s(f) + alg->at(p).deg});
        }
    // mu^2(x, a) = (-1)^{|a|} x*a
    for (auto& [fp, idx] : pos) {
        auto [f, p] = fp;
        for (int a = 0; a < alg->dim(); ++a) {
            if (alg->is_idempotent(a)) continue;
            auto prod = alg->product(p, a);
            if (!prod) continue;
            LinComb v;
            v[pos.at({f, prod->first})] = sign_pow(alg->at(a).deg) * prod->second;
            m.set_mu({idx, a}, v);
        }
    }
    // mu^1(x) = (-1)^{|x|} del(x), del(gamma_f p) = sum_g gamma_g (entry(g,f) p)
    for (auto& [fp, idx] : pos) {
        auto [f, p] = fp;
        LinComb v;
        for (int g = 0; g < size(); ++g) {
            auto e = entry(g, f);
            for (auto& [i, c] : e) {
                auto prod = alg->product(i, p);
                if (!prod) continue;
                lin_add(v, c * prod->second, pos.at({g, prod->first}));
            }
        }
        if (!v.empty()) {
            Rational s = sign_pow(m.basis[idx].deg);
            LinComb w;
            for (auto& [i, c] : v) w[i] = s * c;
            m.set_mu({idx}, w);
        }
    }
    return m;
}

std::vector<long> TwistedComplex::k_class() const {
    std::vector<long> v(alg->m(), 0);
    for (auto& g : gens) v[g.vertex - 1] += ((g.ishift + g.jshift) % 2 == 0) ? 1 : -1;
    return v;
}

DgHom::DgHom(const TwistedComplex& src, const TwistedComplex& tgt) : src_(&src), tgt_(&tgt) {
    if (src.alg != tgt.alg) throw std::invalid_argument("DgHom: different algebras");
    const ZigzagAlgebra& a = *src.alg;
    for (int f0 = 0; f0 < src.size(); ++f0)
        for (int f1 = 0; f1 < tgt.size(); ++f1)
            for (int p = 0; p < a.dim(); ++p) {
                if (a.at(p).tgt != tgt.gens[f1].vertex || a.at(p).src != src.gens[f0].vertex) continue;
                index_[{f0, f1, p}] = (int)elts_.size();
                elts_.push_back({f0, f1, p});
            }
    slice_pos_.resize(elts_.size());
    for (int i = 0; i < (int)elts_.size(); ++i) slices_[elt_deg(i)].push_back(i);
    for (auto& [d, v] : slices_)
        for (int j = 0; j < (int)v.size(); ++j) slice_pos_[v[j]] = j;
}

int DgHom::elt_deg(int i) const {
    const auto& e = elts_[i];
    return tgt_->gen_t(e.f1) + src_->alg->at(e.path).deg - src_->gen_t(e.f0);
}

int DgHom::elt_s(int i) const {
    const auto& e = elts_[i];
    return tgt_->gen_s(e.f1) + src_->alg->at(e.path).deg - src_->gen_s(e.f0);
}

int DgHom::find(int f0, int f1, int path) const {
    auto it = index_.find({f0, f1, path});
    return it == index_.end() ? -1 : it->second;
}

Vec DgHom::differential(int i) const {
    const ZigzagAlgebra& a = *src_->alg;
    const auto& e = elts_[i];
    int k = elt_deg(i);
    Vec out(elts_.size(), Rational(0));
    auto put = [&](int f0, int f1, int p, const Rational& c) {
        int j = find(f0, f1, p);
        if (j < 0) throw std::logic_error("DgHom::differential: basis element missing");
        out[j] += c;
    };
    // del_tgt ∘ phi
    for (int g = 0; g < tgt_->size(); ++g) {
        auto del = tgt_->entry(g, e.f1);
        for (auto& [i2, c] : del) {
            auto prod = a.product(i2, e.path);
            if (prod) put(e.f0, g, prod->first, c * prod->second);
        }
    }
    // -(-1)^{|phi|} phi ∘ del_src
    for (int g = 0; g < src_->size(); ++g) {
        auto del = src_->entry(e.f0, g);
        for (auto& [i2, c] : del) {
            auto prod = a.product(e.path, i2);
            if (prod) put(g, e.f1, prod->first, -sign_pow(k) * c * prod->second);
        }
    }
    return out;
}

Vec DgHom::differential(const Vec& v) const {
    Vec out(elts_.size(), Rational(0));
    for (int i = 0; i < (int)elts_.size(); ++i) {
        if (v[i].is_zero()) continue;
        Vec di = differential(i);
        for (int j = 0; j < (int)elts_.size(); ++j)
            if (!di[j].is_zero()) out[j] += v[i] * di[j];
    }
    return out;
}

const std::vector<int>& DgHom::slice(int deg) const {
    static const std::vector<int> empty;
    auto it = slices_.find(deg);
    return it == slices_.end() ? empty : it->second;
}

Vec DgHom::to_slice(int deg, const Vec& full) const {
    const auto& sl = slice(deg);
    Vec out(sl.size(), Rational(0));
    for (size_t j = 0; j < sl.size(); ++j) out[j] = full[sl[j]];
    return out;
}

Vec DgHom::from_slice(int deg, const Vec& sl) const {
    Vec out(elts_.size(), Rational(0));
    const auto& s = slice(deg);
    for (size_t j = 0; j < s.size(); ++j) out[s[j]] = sl[j];
    return out;
}

FiniteComplex DgHom::total_complex() const {
    FiniteComplex c;
    for (auto& [deg, v] : slices_) c.dims[deg] = (int)v.size();
    for (auto& [deg, v] : slices_) {
        auto it = slices_.find(deg + 1);
        int rows = (it == slices_.end()) ? 0 : (int)it->second.size();
        SparseMatrix d(rows, (int)v.size());
        bool any = false;
        for (size_t col = 0; col < v.size(); ++col) {
            Vec di = differential(v[col]);
            for (int j = 0; j < (int)elts_.size(); ++j) {
                if (di[j].is_zero()) continue;
                if (elt_deg(j) != deg + 1) throw std::logic_error("DgHom: differential not of degree +1");
                d.add(slice_pos_[j], (int)col, di[j]);
                any = true;
            }
        }
        if (rows > 0 && any) c.d[deg] = std::move(d);
        else if (rows > 0) c.d[deg] = std::move(d);
    }
    return c;
}

Vec dg_compose(const DgHom& hg, const Vec& g, const DgHom& hf, const Vec& f, const DgHom& hout) {
    // hf = hom(X, Y), hg = hom(Y, Z), hout = hom(X, Z); returns g∘f.
    if (&hf.tgt() != &hg.src() && !(hf.tgt() == hg.src()))
        throw std::invalid_argument("dg_compose: chain mismatch");
    const ZigzagAlgebra& a = *hf.src().alg;
    Vec out(hout.dim(), Rational(0));
    for (int i = 0; i < hf.dim(); ++i) {
        if (f[i].is_zero()) continue;
        const auto& ef = hf.basis()[i];
        for (int j = 0; j < hg.dim(); ++j) {
            if (g[j].is_zero()) continue;
            const auto& eg = hg.basis()[j];
            if (eg.f0 != ef.f1) continue;
            auto prod = a.product(eg.path, ef.path);
            if (!prod) continue;
            int t = hout.find(ef.f0, eg.f1, prod->first);
            if (t < 0) throw std::logic_error("dg_compose: missing target element");
            out[t] += f[i] * g[j] * prod->second;
        }
    }
    return out;
}

namespace {

Vec class_vector(const DgHom& h, const HomClass& cls) {
    Vec v(h.dim(), Rational(0));
    for (auto& [e, c] : cls.rep) {
        int i = h.find(e.f0, e.f1, e.path);
        if (i < 0) throw std::logic_error("class_vector: element missing");
        v[i] = c;
    }
    return v;
}

} // namespace

std::vector<HomClass> hom_classes(const TwistedComplex& c0, const TwistedComplex& c1) {
    DgHom h(c0, c1);
    FiniteComplex fc = h.total_complex();
    auto coh = cohomology(fc);
    std::vector<HomClass> out;
    for (auto& [deg, reps] : coh.reps) {
        const auto& sl = h.slice(deg);
        for (auto& rep : reps) {
            // The differential is s-homogeneous, so the pure-s parts of any
            // cocycle are cocycles; nonzero parts represent independent classes.
            std::map<int, Vec> by_s;
            for (size_t j = 0; j < sl.size(); ++j) {
                if (rep[j].is_zero()) continue;
                int s = h.elt_s(sl[j]);
                auto& v = by_s[s];
                if (v.empty()) v.assign(sl.size(), Rational(0));
                v[j] = rep[j];
            }
            for (auto& [s, v] : by_s) {
                // Keep only parts that are not coboundaries.
                Vec full = h.from_slice(deg, v);
                Vec proj = coh.project(deg, v);
                bool nonzero = false;
                for (auto& c : proj)
                    if (!c.is_zero()) nonzero = true;
                if (!nonzero) continue;
                HomClass cls;
                cls.r = deg - s;
                cls.s = s;
                for (size_t j = 0; j < sl.size(); ++j)
                    if (!v[j].is_zero()) cls.rep.push_back({h.basis()[sl[j]], v[j]});
                out.push_back(std::move(cls));
            }
        }
    }
    // The pure-s parts of distinct representatives could in principle overlap
    // in cohomology; verify independence and prune.
    // Group by total degree and run a span check over projection coordinates.
    std::map<int, std::vector<size_t>> by_deg;
    for (size_t i = 0; i < out.size(); ++i) by_deg[out[i].total()].push_back(i);
    std::vector<HomClass> pruned;
    for (auto& [deg, idxs] : by_deg) {
        int hdim = coh.dims.count(deg) ? coh.dims.at(deg) : 0;
        SpanTracker span(hdim);
        for (size_t i : idxs) {
            Vec v = h.to_slice(deg, class_vector(h, out[i]));
            Vec proj = coh.project(deg, v);
            if (span.add(proj)) pruned.push_back(out[i]);
        }
        if (span.dim() != hdim)
            throw std::logic_error("hom_classes: pure-s classes do not span cohomology");
    }
    return pruned;
}

std::map<std::pair<int, int>, int> ext_table(const TwistedComplex& c0, const TwistedComplex& c1) {
    std::map<std::pair<int, int>, int> t;
    for (auto& cls : hom_classes(c0, c1)) t[{cls.s, cls.r}]++;
    return t;
}

long ext_total_dim(const TwistedComplex& c0, const TwistedComplex& c1) {
    long n = 0;
    for (auto& [k, v] : ext_table(c0, c1)) n += v;
    return n;
}

long euler_pairing(const TwistedComplex& c0, const TwistedComplex& c1) {
    long chi = 0;
    for (auto& [k, v] : ext_table(c0, c1)) {
        int total = k.first + k.second;
        chi += ((total % 2 + 2) % 2 == 0 ? 1 : -1) * v;
    }
    return chi;
}

TwistedComplex twist(int k, const TwistedComplex& c) {
    const ZigzagAlgebra& a = *c.alg;
    TwistedComplex pk = TwistedComplex::projective(a, k);
    auto classes = hom_classes(pk, c);

    TwistedComplex out;
    out.alg = &a;
    for (auto& cls : classes) out.gens.push_back({k, cls.s, 1 - cls.r});
    int off = (int)classes.size();
    for (auto& g : c.gens) out.gens.push_back(g);
    for (auto& [key, v] : c.entries) out.entries[{key.first + off, key.second + off}] = v;
    for (size_t ci = 0; ci < classes.size(); ++ci) {
        std::map<int, AlgElem> per_target;
        for (auto& [e, coeff] : classes[ci].rep) per_target[e.f1][e.path] += coeff;
        for (auto& [f1, elem] : per_target) {
            AlgElem v;
            for (auto& [p, cc] : elem)
                if (!cc.is_zero()) v[p] = cc;
            if (!v.empty()) out.set_entry(f1 + off, (int)ci, v);
        }
    }
    out.validate();
    return out;
}

TwistedComplex untwist(int k, const TwistedComplex& c) {
    const ZigzagAlgebra& a = *c.alg;
    int n = a.n();
    TwistedComplex pk = TwistedComplex::projective(a, k);
    auto fwd = hom_classes(pk, c);
    auto bwd = hom_classes(c, pk);
    if (fwd.size() != bwd.size())
        throw std::logic_error("untwist: hom(P_k,C) and hom(C,P_k) class counts differ");

    int nc = (int)fwd.size();
    TwistedComplex out;
    out.alg = &a;
    for (auto& g : c.gens) out.gens.push_back(g);
    for (auto& [key, v] : c.entries) out.entries[key] = v;
    int off = c.size();
    for (auto& cls : fwd) out.gens.push_back({k, cls.s - n, -cls.r - 1});
    if (nc == 0) return out;

    // Pairing: l_k-coefficient of psi_e ∘ phi_c in end(P_k).
    DgHom hf(pk, c), hb(c, pk), hend(pk, pk);
    int loop_elt = hend.find(0, 0, a.loop(k));
    SparseMatrix pairing(nc, nc);
    for (int e = 0; e < nc; ++e)
        for (int ci = 0; ci < nc; ++ci) {
            Vec comp = dg_compose(hb, class_vector(hb, bwd[e]), hf, class_vector(hf, fwd[ci]), hend);
            if (loop_elt >= 0 && !comp[loop_elt].is_zero()) pairing.set(e, ci, comp[loop_elt]);
        }
    Elimination elim_t(pairing.transpose());
    if (elim_t.rank() != nc) throw std::logic_error("untwist: composition pairing degenerate");

    for (int ci = 0; ci < nc; ++ci) {
        Vec delta(nc, Rational(0));
        delta[ci] = Rational(1);
        auto sol = elim_t.solve(delta);
        if (!sol) throw std::logic_error("untwist: pairing inversion failed");
        Vec psi(hb.dim(), Rational(0));
        for (int e = 0; e < nc; ++e) {
            if ((*sol)[e].is_zero()) continue;
            Vec ve = class_vector(hb, bwd[e]);
            for (int i = 0; i < hb.dim(); ++i) psi[i] += (*sol)[e] * ve[i];
        }
        std::map<int, AlgElem> per_source;
        for (int i = 0; i < hb.dim(); ++i) {
            if (psi[i].is_zero()) continue;
            const auto& e = hb.basis()[i];
            per_source[e.f0][e.path] += psi[i];
        }
        for (auto& [f0, elem] : per_source) {
            AlgElem v;
            for (auto& [p, cc] : elem)
                if (!cc.is_zero()) v[p] = cc;
            if (!v.empty()) out.set_entry(off + ci, f0, v);
        }
    }
    out.validate();
    return out;
}

TwistedComplex reduce(const TwistedComplex& c) {
    TwistedComplex cur = c;
    for (;;) {
        int A = -1, B = -1;
        Rational u;
        for (auto& [key, v] : cur.entries) {
            if (v.size() != 1) continue;
            auto& [p, coeff] = *v.begin();
            if (!cur.alg->is_idempotent(p)) continue;
            A = key.second;
            B = key.first;
            u = coeff;
            break;
        }
        if (A < 0) return cur;

        TwistedComplex next;
        next.alg = cur.alg;
        std::vector<int> keep;
        std::vector<int> newpos(cur.size(), -1);
        for (int g = 0; g < cur.size(); ++g)
            if (g != A && g != B) {
                newpos[g] = (int)keep.size();
                keep.push_back(g);
                next.gens.push_back(cur.gens[g]);
            }
        Rational uinv = u.inv();
        for (int gi : keep)
            for (int gj : keep) {
                AlgElem base = cur.entry(gj, gi);
                AlgElem left = cur.entry(gj, A);
                AlgElem right = cur.entry(B, gi);
                if (!left.empty() && !right.empty()) {
                    AlgElem prod = cur.alg->multiply(left, right);
                    for (auto& [p, coeff] : prod) {
                        base[p] -= uinv * coeff;
                        if (base[p].is_zero()) base.erase(p);
                    }
                }
                if (!base.empty()) next.set_entry(newpos[gj], newpos[gi], base);
            }
        cur = std::move(next);
    }
}

TwistedComplex mapping_cone(const TwistedComplex& c0, const TwistedComplex& c1,
                            const std::map<std::pair<int, int>, AlgElem>& phi) {
    TwistedComplex out;
    out.alg = c0.alg;
    for (auto& g : c0.gens) out.gens.push_back({g.vertex, g.ishift, g.jshift + 1});
    int off = c0.size();
    for (auto& g : c1.gens) out.gens.push_back(g);
    for (auto& [key, v] : c0.entries) {
        AlgElem neg;
        for (auto& [p, c] : v) neg[p] = -c;
        out.set_entry(key.first, key.second, neg);
    }
    for (auto& [key, v] : c1.entries) out.entries[{key.first + off, key.second + off}] = v;
    for (auto& [key, v] : phi) out.set_entry(key.first + off, key.second, v);
    out.validate();
    return out;
}

SphericalReport spherical_check(const TwistedComplex& c) {
    SphericalReport rep;
    const ZigzagAlgebra& a = *c.alg;
    int n = a.n();
    auto et = ext_table(c, c);
    std::map<int, int> total; // collapsed: by total degree
    long dim_sum = 0;
    for (auto& [k, v] : et) {
        total[k.first + k.second] += v;
        dim_sum += v;
    }
    if (dim_sum != 2 || total[0] != 1 || total[n] != 1) {
        rep.spherical = false;
        rep.detail = "endomorphism cohomology is not H*(S^n)";
        return rep;
    }

    // Nondegenerate composition pairing against every P_k: compose classes of
    // hom(P_k, C) with classes of hom(C, P_k) in complementary degree into
    // H^n(end C) = C and require an invertible pairing matrix.
    DgHom hend(c, c);
    FiniteComplex endc = hend.total_complex();
    auto coh = cohomology(endc);
    if (!coh.dims.count(n) || coh.dims.at(n) != 1) {
        rep.spherical = false;
        rep.detail = "H^n(end C) is not one-dimensional";
        return rep;
    }
    for (int k = 1; k <= a.m(); ++k) {
        TwistedComplex pk = TwistedComplex::projective(a, k);
        auto fwd = hom_classes(pk, c);
        auto bwd = hom_classes(c, pk);
        if (fwd.size() != bwd.size()) {
            rep.spherical = false;
            rep.detail = "hom class counts against P_" + std::to_string(k) + " differ";
            return rep;
        }
        if (fwd.empty()) continue;
        DgHom hf(pk, c), hb(c, pk);
        int nc = (int)fwd.size();
        SparseMatrix pairing(nc, nc);
        for (int e = 0; e < nc; ++e)
            for (int f = 0; f < nc; ++f) {
                if (fwd[f].total() + bwd[e].total() != n) continue;
                // u∘v: C -> P_k -> C
                Vec comp = dg_compose(hf, class_vector(hf, fwd[f]), hb, class_vector(hb, bwd[e]), hend);
                Vec proj = coh.project(n, hend.to_slice(n, comp));
                if (!proj.empty() && !proj[0].is_zero()) pairing.set(e, f, proj[0]);
            }
        Elimination elim(pairing);
        if (elim.rank() != nc) {
            rep.spherical = false;
            rep.detail = "composition pairing against P_" + std::to_string(k) + " degenerate";
            return rep;
        }
    }
    rep.spherical = true;
    return rep;
}

TwistedComplex scale_transfer(const TwistedComplex& c, const ZigzagAlgebra& target) {
    const ZigzagAlgebra& a = *c.alg;
    int n = a.n(), np = target.n();
    if (a.m() != target.m()) throw std::invalid_argument("scale_transfer: vertex counts differ");
    int r = -1;
    for (auto& g : c.gens) {
        int res = ((g.ishift % n) + n) % n;
        if (r < 0) r = res;
        else if (r != res) throw std::invalid_argument("scale_transfer: mixed residues (decomposable input)");
    }
    TwistedComplex out;
    out.alg = &target;
    for (auto& g : c.gens) {
        int q = (g.ishift - r) / n;
        out.gens.push_back({g.vertex, q * np + r, g.jshift});
    }
    for (auto& [key, v] : c.entries) {
        AlgElem w;
        for (auto& [p, coeff] : v) {
            auto idx = target.index_of(a.at(p).label);
            if (!idx) throw std::logic_error("scale_transfer: basis mismatch");
            w[*idx] = coeff;
        }
        out.set_entry(key.first, key.second, w);
    }
    out.validate();
    return out;
}

} // namespace zigzag
