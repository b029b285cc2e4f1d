#include "projconst/seqmodel.hpp"

#include <algorithm>

#include "projconst/linf.hpp"

namespace projconst::seqmodel {

EvSeq::EvSeq(std::vector<Rational> prefix, Rational tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    while (!prefix_.empty() && prefix_.back() == tail_) prefix_.pop_back();
}

Rational EvSeq::coord(int i) const {
    if (i < 0) throw ArgumentError("EvSeq::coord: negative index");
    if (i < prefix_len()) return prefix_[static_cast<std::size_t>(i)];
    return tail_;
}

Rational EvSeq::sup_norm() const {
    Rational best = abs(tail_);
    for (const auto& v : prefix_) best = std::max(best, static_cast<Rational>(abs(v)));
    return best;
}

EvSeq EvSeq::unit(int i) {
    std::vector<Rational> prefix(static_cast<std::size_t>(i) + 1, Rational(0));
    prefix.back() = 1;
    return EvSeq(std::move(prefix), Rational(0));
}

EvSeq EvSeq::constant(const Rational& v) { return EvSeq({}, v); }

EvSeq operator+(const EvSeq& a, const EvSeq& b) {
    int len = std::max(a.prefix_len(), b.prefix_len());
    std::vector<Rational> prefix;
    prefix.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) prefix.push_back(a.coord(i) + b.coord(i));
    return EvSeq(std::move(prefix), a.tail_ + b.tail_);
}

EvSeq operator*(const Rational& s, const EvSeq& a) {
    std::vector<Rational> prefix;
    prefix.reserve(a.prefix_.size());
    for (const auto& v : a.prefix_) prefix.push_back(s * v);
    return EvSeq(std::move(prefix), s * a.tail_);
}

std::string EvSeq::to_string() const {
    std::string s = "(";
    for (const auto& v : prefix_) s += rational_to_string(v) + ", ";
    s += rational_to_string(tail_) + ", " + rational_to_string(tail_) + ", ...)";
    return s;
}

namespace {

// Coordinates (0..len-1, tail) as a finite vector; with len at least the
// longest prefix this is a linear isomorphism onto its image, so ranks and
// spans are preserved.
std::vector<Rational> flatten(const EvSeq& s, int len) {
    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>(len) + 1);
    for (int i = 0; i < len; ++i) v.push_back(s.coord(i));
    v.push_back(s.tail());
    return v;
}

int common_length(const std::vector<EvSeq>& seqs) {
    int len = 1;
    for (const auto& s : seqs) len = std::max(len, s.prefix_len());
    return len;
}

}  // namespace

SeqSubspace::SeqSubspace(std::vector<EvSeq> gens, Ambient amb)
    : generators(std::move(gens)), ambient(amb) {
    if (generators.empty()) return;
    int len = common_length(generators);
    std::vector<std::vector<Rational>> rows;
    rows.reserve(generators.size());
    for (const auto& g : generators) rows.push_back(flatten(g, len));
    if (rational_rank(rows) != static_cast<int>(generators.size()))
        throw ArgumentError("SeqSubspace: generators are linearly dependent");
    if (amb != Ambient::linf)
        for (const auto& g : generators)
            if (g.tail() != 0)
                throw ArgumentError("SeqSubspace: nonzero tail is not an element of " +
                                    std::string(amb == Ambient::c0 ? "c0" : "l1"));
}

Rational pair(const EvSeq& ell, const EvSeq& x) {
    if (ell.tail() != 0)
        throw ArgumentError("pair: functional is not finitely supported (tail " +
                            rational_to_string(ell.tail()) + " != 0)");
    Rational acc(0);
    for (int i = 0; i < ell.prefix_len(); ++i) acc += ell.coord(i) * x.coord(i);
    return acc;
}

bool in_span(const std::vector<EvSeq>& basis, const EvSeq& v) {
    if (basis.empty()) return v.is_zero();
    std::vector<EvSeq> all = basis;
    all.push_back(v);
    int len = common_length(all);
    std::vector<std::vector<Rational>> rows;
    for (const auto& b : basis) rows.push_back(flatten(b, len));
    int base_rank = rational_rank(rows);
    rows.push_back(flatten(v, len));
    return rational_rank(rows) == base_rank;
}

SeqSubspace preannihilator_truncated(const SeqSubspace& f, int truncation) {
    if (truncation < 1) throw ArgumentError("preannihilator_truncated: truncation must be >= 1");
    std::vector<std::vector<Rational>> constraints;
    for (const auto& g : f.generators) {
        std::vector<Rational> row;
        row.reserve(static_cast<std::size_t>(truncation));
        for (int i = 0; i < truncation; ++i) row.push_back(g.coord(i));
        constraints.push_back(std::move(row));
    }
    std::vector<std::vector<Rational>> basis = null_space(std::move(constraints), truncation);
    std::vector<EvSeq> gens;
    gens.reserve(basis.size());
    for (auto& b : basis) gens.emplace_back(std::move(b), Rational(0));
    return SeqSubspace(std::move(gens), Ambient::l1);
}

SeqSubspace pre_pre_annihilator_c0(const SeqSubspace& f) {
    // All generators are constant from index stable on. The preannihilator
    // is spanned by its restriction to [0..stable] together with the
    // differences e_stable - e_i (i > stable); on a c_0 element those
    // differences force x_i = x_stable for every i >= stable, and the zero
    // tail then forces all of them to vanish. What remains is the exact
    // null-space problem on the first `stable` coordinates.
    const int stable = f.generators.empty() ? 0 : common_length(f.generators);
    SeqSubspace trunc = preannihilator_truncated(f, stable + 1);

    std::vector<std::vector<Rational>> rows;
    for (const auto& ell : trunc.generators) {
        std::vector<Rational> row;
        row.reserve(static_cast<std::size_t>(stable));
        for (int i = 0; i < stable; ++i) row.push_back(ell.coord(i));
        rows.push_back(std::move(row));
    }
    std::vector<std::vector<Rational>> basis = null_space(std::move(rows), stable);

    std::vector<EvSeq> gens;
    gens.reserve(basis.size());
    for (auto& b : basis) {
        // Integer-primitive scaling with a positive leading coordinate.
        Rational lead(0);
        boost::multiprecision::cpp_int num_gcd = 0, den_lcm = 1;
        for (const auto& v : b) {
            if (lead == 0 && v != 0) lead = v;
            num_gcd = boost::multiprecision::gcd(num_gcd, numerator(v) >= 0 ? numerator(v)
                                                                            : -numerator(v));
            den_lcm = boost::multiprecision::lcm(den_lcm, denominator(v));
        }
        if (lead != 0) {
            Rational scale(den_lcm, num_gcd == 0 ? 1 : num_gcd);
            if (lead < 0) scale = -scale;
            for (auto& v : b) v *= scale;
        }
        gens.emplace_back(std::move(b), Rational(0));
    }
    return SeqSubspace(std::move(gens), Ambient::c0);
}

Rational hexagon_norm(const Rational& x, const Rational& y) {
    Rational best = abs(x);
    best = std::max(best, static_cast<Rational>(abs(y)));
    best = std::max(best, static_cast<Rational>(abs(x + y)));
    return best;
}

KobosReport kobos_report(int truncation) {
    if (truncation < 4) throw ArgumentError("kobos_report: truncation must be >= 4");
    KobosReport rep;
    rep.truncation = truncation;

    // F = span{(1,0,1,1,...), (0,1,1,1,...)} inside l_inf.
    EvSeq f1({Rational(1), Rational(0)}, Rational(1));
    EvSeq f2({Rational(0), Rational(1)}, Rational(1));
    SeqSubspace f({f1, f2}, Ambient::linf);
    rep.f_basis = f.generators;

    // V = (F_0)_0: one-dimensional.
    SeqSubspace v = pre_pre_annihilator_c0(f);
    rep.v_basis = v.generators;

    // The truncated preannihilator has dimension D - 2 and contains every
    // a(i) = e_1 + e_2 - e_i (1-based, 3 <= i <= D).
    SeqSubspace trunc = preannihilator_truncated(f, truncation);
    rep.truncated_preannihilator_dim = trunc.dim();
    bool checks = trunc.dim() == truncation - 2;
    for (int i = 2; i < truncation && checks; ++i) {
        EvSeq a = EvSeq::unit(0) + EvSeq::unit(1) + (Rational(-1) * EvSeq::unit(i));
        checks = in_span(trunc.generators, a) && pair(a, f1) == 0 && pair(a, f2) == 0;
    }
    rep.truncated_checks_pass = checks;

    // G = ker(pi_1) cap ker(pi_2) is annihilated exactly by the span of
    // e_1, e_2: testing against e_i in G kills every other coordinate of a
    // finitely supported functional.
    rep.g0_basis = {EvSeq::unit(0), EvSeq::unit(1)};
    rep.u_constraint_coords = {0, 1};

    // Witness (1, 0, 0, ...): matching it at coordinate 0 forces the
    // V-coefficient, and coordinate 1 then disagrees, with every element of
    // U vanishing on both coordinates.
    rep.witness = EvSeq::unit(0);
    const EvSeq& v_gen = rep.v_basis.front();
    rep.forcing_coord = 0;
    rep.mismatch_coord = 1;
    rep.forced_coefficient = rep.witness.coord(0) / v_gen.coord(0);
    rep.decomposition_value = rep.forced_coefficient * v_gen.coord(1);
    rep.witness_value = rep.witness.coord(1);
    rep.witness_outside_direct_sum = rep.decomposition_value != rep.witness_value;

    // lambda(V, c_0) = 1: the projection x -> phi(x) v with
    // phi = (e_1 - e_2)/2 has norm ||phi||_1 ||v||_inf = 1 and fixes v,
    // and no projection onto a nonzero subspace has norm below 1.
    rep.lambda_v = 1;
    rep.norming_functional = {Rational(1, 2), Rational(-1, 2)};

    // F carries the norm max(|x|, |y|, |x+y|): its 3-coordinate embedding
    // into l_inf^3 is isometric, and the LP gives the projection constant.
    Mat basis(3, 2);
    basis(0, 0) = 1;
    basis(1, 0) = 0;
    basis(2, 0) = 1;
    basis(0, 1) = 0;
    basis(1, 1) = 1;
    basis(2, 1) = 1;
    linf::LambdaResult lam = linf::relative_projection_constant(linf::SubspaceLinf(basis));
    rep.lambda_f = lam.value;
    rep.lambda_f_dual_bound = lam.dual_bound;
    rep.equality_refuted = rep.lambda_f > rational_to_double(rep.lambda_v);
    return rep;
}

}  // namespace projconst::seqmodel
