#include "ghostlab/constraints.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace ghostlab {

namespace {

bool mode_less(WaveVector a, WaveVector b) {
    return std::tuple{a.norm_sq(), a.k1, a.k2} < std::tuple{b.norm_sq(), b.k1, b.k2};
}

std::string amp(WaveVector k) { return "a" + k.str(); }

/// Canonical form: pair factors ordered, terms sorted, coefficients divided
/// by their gcd, leading coefficient positive.
BilinearConstraint normalized(BilinearConstraint c) {
    for (ConstraintTerm& t : c.terms)
        if (mode_less(t.b, t.a)) std::swap(t.a, t.b);
    std::sort(c.terms.begin(), c.terms.end(), [](const ConstraintTerm& x, const ConstraintTerm& y) {
        return std::tuple{x.a.norm_sq(), x.a.k1, x.a.k2, x.b.norm_sq(), x.b.k1, x.b.k2} <
               std::tuple{y.a.norm_sq(), y.a.k1, y.a.k2, y.b.norm_sq(), y.b.k1, y.b.k2};
    });
    std::int64_t g = 0;
    for (const ConstraintTerm& t : c.terms) g = std::gcd(g, std::abs(t.coef));
    if (g > 1)
        for (ConstraintTerm& t : c.terms) t.coef /= g;
    if (!c.terms.empty() && c.terms.front().coef < 0)
        for (ConstraintTerm& t : c.terms) t.coef = -t.coef;
    return c;
}

bool same_terms(const BilinearConstraint& x, const BilinearConstraint& y) {
    if (x.terms.size() != y.terms.size()) return false;
    for (std::size_t i = 0; i < x.terms.size(); ++i) {
        const ConstraintTerm& a = x.terms[i];
        const ConstraintTerm& b = y.terms[i];
        if (a.coef != b.coef || !(a.a == b.a) || !(a.b == b.b)) return false;
    }
    return true;
}

BilinearConstraint make_constraint(int id, WaveVector target,
                                   std::initializer_list<ConstraintTerm> terms) {
    BilinearConstraint c;
    c.id = id;
    c.target_k = target;
    c.source_shell = target.norm_sq();
    c.terms = terms;
    return c;
}

}  // namespace

std::vector<WaveVector> ActiveSets::all() const {
    std::vector<WaveVector> m = s1;
    m.insert(m.end(), s2.begin(), s2.end());
    m.insert(m.end(), s3.begin(), s3.end());
    return m;
}

ActiveSets build_active_sets() {
    ActiveSets sets;
    sets.s1 = shell_vectors(1);
    sets.s2 = shell_vectors(2);
    sets.s3 = shell_vectors(5);
    auto order = [](std::vector<WaveVector>& v) { std::sort(v.begin(), v.end(), mode_less); };
    order(sets.s1);
    order(sets.s2);
    order(sets.s3);
    return sets;
}

const std::vector<WaveVector>& active_modes() {
    static const std::vector<WaveVector> modes = [] {
        std::vector<WaveVector> m = build_active_sets().all();
        std::sort(m.begin(), m.end(), mode_less);
        return m;
    }();
    return modes;
}

int mode_position(WaveVector k) {
    const std::vector<WaveVector>& m = active_modes();
    auto it = std::lower_bound(m.begin(), m.end(), k, mode_less);
    if (it == m.end() || !(*it == k))
        throw SupportViolation("mode " + k.str() + " is not among the 16 active modes");
    return int(it - m.begin());
}

std::string BilinearConstraint::str() const {
    std::ostringstream os;
    os << "constraint " << id << " target " << target_k.str() << ":";
    for (const ConstraintTerm& t : terms) {
        os << (t.coef < 0 ? " - " : " + ");
        if (std::abs(t.coef) != 1) os << std::abs(t.coef) << " ";
        os << amp(t.a) << " " << amp(t.b);
    }
    os << " = 0";
    return os.str();
}

std::vector<BilinearConstraint> transcribed_constraints() {
    auto T = [](std::int64_t c, int a1, int a2, int b1, int b2) {
        return ConstraintTerm{c, {a1, a2}, {b1, b2}};
    };
    return {
        make_constraint(1, {2, 0}, {T(1, 0, -1, 2, 1), T(-1, 0, 1, 2, -1)}),
        make_constraint(2, {0, 2}, {T(1, 1, 0, -1, 2), T(-1, -1, 0, 1, 2)}),
        make_constraint(3, {-2, 0}, {T(1, 0, 1, -2, -1), T(-1, 0, -1, -2, 1)}),
        make_constraint(4, {0, -2}, {T(1, -1, 0, 1, -2), T(-1, 1, 0, -1, -2)}),
        make_constraint(5, {2, 2}, {T(1, 1, 0, 1, 2), T(-1, 0, 1, 2, 1)}),
        make_constraint(6, {-2, 2}, {T(1, 0, 1, -2, 1), T(-1, -1, 0, -1, 2)}),
        make_constraint(7, {2, -2}, {T(1, 0, -1, 2, -1), T(-1, 1, 0, 1, -2)}),
        make_constraint(8, {-2, -2}, {T(1, -1, 0, -1, -2), T(-1, 0, -1, -2, -1)}),
        make_constraint(9, {3, 0}, {T(1, 2, 1, 1, -1), T(-1, 2, -1, 1, 1)}),
        make_constraint(10, {0, 3}, {T(1, -1, 2, 1, 1), T(-1, 1, 2, -1, 1)}),
        make_constraint(11, {-3, 0}, {T(1, -2, -1, -1, 1), T(-1, -2, 1, -1, -1)}),
        make_constraint(12, {0, -3}, {T(1, 1, -2, -1, -1), T(-1, -1, -2, 1, -1)}),
        make_constraint(13, {1, 3}, {T(1, 0, 1, 1, 2)}),
        make_constraint(14, {3, 1}, {T(1, 1, 0, 2, 1)}),
        make_constraint(15, {-1, 3}, {T(1, 0, 1, -1, 2)}),
        make_constraint(16, {-3, 1}, {T(1, -1, 0, -2, 1)}),
        make_constraint(17, {1, -3}, {T(1, 0, -1, 1, -2)}),
        make_constraint(18, {-1, -3}, {T(1, 0, -1, -1, -2)}),
        make_constraint(19, {3, -1}, {T(1, 1, 0, 2, -1)}),
        make_constraint(20, {-3, -1}, {T(1, -1, 0, -2, -1)}),
        make_constraint(21, {2, 3}, {T(1, 1, 2, 1, 1)}),
        make_constraint(22, {3, 2}, {T(1, 2, 1, 1, 1)}),
        make_constraint(23, {-2, 3}, {T(1, -1, 2, -1, 1)}),
        make_constraint(24, {-3, 2}, {T(1, -2, 1, -1, 1)}),
        make_constraint(25, {-2, -3}, {T(1, -1, -2, -1, -1)}),
        make_constraint(26, {2, -3}, {T(1, 1, -2, 1, -1)}),
        make_constraint(27, {3, -2}, {T(1, 1, -1, 2, -1)}),
        make_constraint(28, {-3, -2}, {T(1, -2, -1, -1, -1)}),
    };
}

std::vector<BilinearConstraint> generate_constraints(GenerationAudit* audit) {
    return generate_constraints(audit, transcribed_constraints());
}

std::vector<BilinearConstraint> generate_constraints(GenerationAudit* audit,
                                                     const std::vector<BilinearConstraint>& reference) {
    const std::vector<WaveVector>& modes = active_modes();
    std::set<WaveVector> mode_set(modes.begin(), modes.end());
    auto active_shell = [](std::int64_t s) { return s == 1 || s == 2 || s == 5; };

    // target -> (ordered factor pair, denominator class |h|^2 |j|^2) -> sum
    // of integer numerators (h_perp . j)(k . j).
    std::map<WaveVector, std::map<std::tuple<int, int, std::int64_t>, std::int64_t>,
             decltype(&mode_less)>
        acc(&mode_less);
    GenerationAudit local;
    GenerationAudit& aud = audit ? *audit : local;

    for (WaveVector h : modes)
        for (WaveVector j : modes) {
            WaveVector k = h + j;
            if (k.is_zero() || active_shell(k.norm_sq())) continue;
            std::int64_t num = h.perp().dot(j) * k.dot(j);
            if (num == 0) continue;
            aud.raw_shells.insert(k.norm_sq());
            int pa = mode_position(h);
            int pb = mode_position(j);
            if (pa > pb) std::swap(pa, pb);
            acc[k][{pa, pb, h.norm_sq() * j.norm_sq()}] += num;
        }

    std::vector<BilinearConstraint> generated;
    for (const auto& [k, terms] : acc) {
        BilinearConstraint c;
        c.target_k = k;
        c.source_shell = k.norm_sq();
        std::int64_t den_class = 0;
        for (const auto& [key, coef] : terms) {
            if (coef == 0) continue;
            auto [pa, pb, d] = key;
            if (den_class == 0) den_class = d;
            if (d != den_class)
                throw GenerationMismatch("target " + k.str() +
                                         " mixes denominator classes " +
                                         std::to_string(den_class) + " and " + std::to_string(d));
            c.terms.push_back({coef, modes[std::size_t(pa)], modes[std::size_t(pb)]});
        }
        if (c.terms.empty()) continue;
        aud.final_shells.insert(k.norm_sq());
        generated.push_back(normalized(std::move(c)));
    }

    if (aud.final_shells != std::set<std::int64_t>{4, 8, 9, 10, 13})
        throw GenerationMismatch("surviving constraint shells differ from {4, 8, 9, 10, 13}");
    if (!aud.raw_shells.count(16) || !aud.raw_shells.count(18))
        throw GenerationMismatch("same-shell products on shells 16/18 were never formed");

    if (generated.size() != reference.size())
        throw GenerationMismatch("generated " + std::to_string(generated.size()) +
                                 " constraints, transcribed " + std::to_string(reference.size()));
    std::vector<BilinearConstraint> out;
    out.reserve(reference.size());
    for (const BilinearConstraint& ref : reference) {
        auto it = std::find_if(generated.begin(), generated.end(), [&](const BilinearConstraint& g) {
            return g.target_k == ref.target_k;
        });
        if (it == generated.end())
            throw GenerationMismatch("no generated constraint for target " + ref.target_k.str());
        if (!same_terms(*it, normalized(ref)))
            throw GenerationMismatch("terms for target " + ref.target_k.str() +
                                     " differ from the transcribed form");
        BilinearConstraint g = *it;
        g.id = ref.id;
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(),
              [](const BilinearConstraint& a, const BilinearConstraint& b) { return a.id < b.id; });
    return out;
}

std::vector<std::pair<int, Complex>> evaluate_constraints(const ScalarAmplitudeField& amps) {
    for (const auto& [k, a] : amps.amplitudes()) {
        (void)a;
        mode_position(k);  // throws SupportViolation for stray modes
    }
    std::vector<std::pair<int, Complex>> out;
    for (const BilinearConstraint& c : transcribed_constraints()) {
        Complex r{};
        for (const ConstraintTerm& t : c.terms)
            r += double(t.coef) * amps.amplitude(t.a) * amps.amplitude(t.b);
        out.emplace_back(c.id, r);
    }
    return out;
}

PropagationState propagate(WaveVector assume_nonzero) {
    return propagate(assume_nonzero, transcribed_constraints());
}

PropagationState propagate(WaveVector assume_nonzero,
                           const std::vector<BilinearConstraint>& constraints) {
    if (assume_nonzero.norm_sq() != 5)
        throw SupportViolation("assumed-nonzero mode " + assume_nonzero.str() +
                               " is not on shell 5");
    PropagationState st;
    st.known_nonzero.insert(assume_nonzero);
    st.known_nonzero.insert(WaveVector{} - assume_nonzero);
    st.log.push_back("assume " + amp(assume_nonzero) + " nonzero (and its conjugate " +
                     amp(WaveVector{} - assume_nonzero) + ")");

    struct Inference {
        WaveVector mode;
        int cid = 0;
        WaveVector witness;
    };

    for (int round = 1;; ++round) {
        std::vector<Inference> found;
        for (const BilinearConstraint& c : constraints) {
            const ConstraintTerm* live = nullptr;
            int live_count = 0;
            for (const ConstraintTerm& t : c.terms) {
                if (st.known_zero.count(t.a) || st.known_zero.count(t.b)) continue;
                live = &t;
                ++live_count;
            }
            if (live_count != 1) continue;
            bool a_nz = st.known_nonzero.count(live->a) > 0;
            bool b_nz = st.known_nonzero.count(live->b) > 0;
            if (a_nz && b_nz)
                throw PropagationStall("constraint " + std::to_string(c.id) +
                                       " contradicts the nonzero assumptions");
            if (a_nz) found.push_back({live->b, c.id, live->a});
            if (b_nz) found.push_back({live->a, c.id, live->b});
        }
        if (found.empty()) break;
        std::sort(found.begin(), found.end(), [](const Inference& x, const Inference& y) {
            return std::tuple{mode_position(x.mode), x.cid} <
                   std::tuple{mode_position(y.mode), y.cid};
        });
        st.log.push_back("round " + std::to_string(round) + ":");
        std::vector<WaveVector> newly;
        for (const Inference& inf : found) {
            if (st.known_nonzero.count(inf.mode))
                throw PropagationStall("mode " + inf.mode.str() +
                                       " forced zero while assumed nonzero");
            st.log.push_back("constraint " + std::to_string(inf.cid) + ": " + amp(inf.mode) +
                             " forced zero (other factor " + amp(inf.witness) + " nonzero)");
            if (st.known_zero.insert(inf.mode).second) newly.push_back(inf.mode);
        }
        for (WaveVector m : newly) {
            WaveVector conj = WaveVector{} - m;
            if (st.known_nonzero.count(conj))
                throw PropagationStall("mode " + conj.str() +
                                       " forced zero while assumed nonzero");
            if (st.known_zero.insert(conj).second)
                st.log.push_back("reality: " + amp(conj) + " forced zero (conjugate of " +
                                 amp(m) + ")");
        }
    }

    ActiveSets sets = build_active_sets();
    st.complete = true;
    for (const std::vector<WaveVector>* s : {&sets.s1, &sets.s2})
        for (WaveVector k : *s)
            if (!st.known_zero.count(k)) st.complete = false;
    if (!st.complete)
        throw PropagationStall("fixpoint reached with undecided amplitudes on shells 1 or 2");
    st.log.push_back("result: every amplitude on shells 1 and 2 vanishes");
    return st;
}

MuEliminationReport mu_plus_elimination_check(std::int64_t max_candidate) {
    MuEliminationReport rep;
    ActiveSets sets = build_active_sets();
    for (WaveVector h : sets.s1)
        for (WaveVector j : sets.s2) {
            WaveVector k = h + j;
            if (!k.is_zero()) rep.shells_hit.insert(k.norm_sq());
        }
    for (std::int64_t mu = 3; mu <= max_candidate; ++mu)
        if (in_stokes_spectrum(mu)) rep.candidates.push_back(mu);
    rep.only_shells_1_and_5 =
        rep.shells_hit == std::set<std::int64_t>{1, 5};
    return rep;
}

NonexistenceReport nonexistence_report() {
    return nonexistence_report(transcribed_constraints());
}

NonexistenceReport nonexistence_report(const std::vector<BilinearConstraint>& reference) {
    NonexistenceReport rep;
    std::ostringstream os;
    os << "nonexistence audit: chained ghost candidates, forcing shell 2, active shells {1, 2, 5}\n";
    os << "\n[constraint system]\n";

    std::vector<BilinearConstraint> generated;
    GenerationAudit audit;
    std::string generation_note = "regenerated from the convolution arithmetic: match";
    try {
        generated = generate_constraints(&audit, reference);
        rep.generation_ok = true;
    } catch (const Error& err) {
        generation_note = std::string("regeneration FAILED: ") + err.what();
    }
    os << "transcribed constraints: " << reference.size() << "\n";
    os << generation_note << "\n";
    os << "raw product shells:";
    for (std::int64_t s : audit.raw_shells) os << " " << s;
    os << "\nsurviving constraint shells:";
    for (std::int64_t s : audit.final_shells) os << " " << s;
    os << " (same-shell reversals cancel the rest)\n";
    for (const BilinearConstraint& c : reference) os << c.str() << "\n";

    os << "\n[propagation]\n";
    ActiveSets sets = build_active_sets();
    rep.cases_total = int(sets.s3.size());
    rep.dual_source_agree = rep.generation_ok;
    for (WaveVector k0 : sets.s3) {
        os << "\ncase k0 = " << k0.str() << ":\n";
        try {
            PropagationState ref_run = propagate(k0, reference);
            for (const std::string& line : ref_run.log) os << line << "\n";
            if (rep.generation_ok) {
                PropagationState gen_run = propagate(k0, generated);
                if (gen_run.known_zero != ref_run.known_zero) {
                    rep.dual_source_agree = false;
                    os << "WARNING: generated-system run reaches a different fixpoint\n";
                }
            }
            ++rep.cases_passed;
        } catch (const Error& err) {
            os << "case FAILED: " << err.what() << "\n";
        }
    }

    os << "\n[forced shell]\n";
    MuEliminationReport mu = mu_plus_elimination_check();
    rep.elimination_ok = mu.only_shells_1_and_5;
    os << "products of shell-1 and shell-2 modes land on shells:";
    for (std::int64_t s : mu.shells_hit) os << " " << s;
    os << "\ncandidate shells examined up to 100:";
    for (std::int64_t s : mu.candidates) os << " " << s;
    os << "\nonly shell 5 can receive the shell-1 x shell-2 interaction: "
       << (rep.elimination_ok ? "yes" : "NO") << "\n";

    os << "\n[contradiction]\n";
    os << "norm identity: |u_plus|^2 = (lambda - mu_minus)/(mu_plus (mu_plus - mu_minus))"
          " * E (1 - P/G^2)\n";
    os << "with lambda = 2, mu_minus = 1, mu_plus = 5 the coefficient is (2-1)/(5*4) = 1/20 > 0\n";
    os << "if some shell-5 amplitude were nonzero, propagation zeroes shells 1 and 2,\n";
    os << "contradicting the nonzero shell-2 forcing; hence u_plus = 0, and the identity\n";
    os << "forces P = G^2, which only the stationary state attains\n";

    rep.nonexistent = rep.generation_ok && rep.cases_passed == rep.cases_total &&
                      rep.elimination_ok && rep.dual_source_agree;
    os << "\nverdict: " << (rep.nonexistent ? "NONEXISTENT" : "UNRESOLVED") << "\n";
    rep.transcript = os.str();
    return rep;
}

}  // namespace ghostlab
