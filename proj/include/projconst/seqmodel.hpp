#pragma once

#include <string>
#include <vector>

#include "projconst/rational.hpp"

// Exact model of eventually-constant sequences: elements of l_inf are
// (prefix, tail) pairs of rationals, c_0 is the tail-zero part, and the
// l_1 side consists of finitely supported sequences used as functionals.
// Every computation here is exact; no floating point enters.
namespace projconst::seqmodel {

class EvSeq {
  public:
    EvSeq() : tail_(0) {}
    EvSeq(std::vector<Rational> prefix, Rational tail);

    const std::vector<Rational>& prefix() const { return prefix_; }
    const Rational& tail() const { return tail_; }
    int prefix_len() const { return static_cast<int>(prefix_.size()); }

    // 0-based coordinate access; beyond the prefix the value is the tail.
    Rational coord(int i) const;

    bool is_zero() const { return prefix_.empty() && tail_ == 0; }
    bool in_c0() const { return tail_ == 0; }
    bool finitely_supported() const { return tail_ == 0; }

    Rational sup_norm() const;

    static EvSeq unit(int i);                  // e_i
    static EvSeq constant(const Rational& v);  // (v, v, v, ...)

    friend EvSeq operator+(const EvSeq& a, const EvSeq& b);
    friend EvSeq operator*(const Rational& s, const EvSeq& a);
    friend bool operator==(const EvSeq& a, const EvSeq& b) {
        return a.prefix_ == b.prefix_ && a.tail_ == b.tail_;
    }

    std::string to_string() const;  // e.g. "(1, 0, 1, 1, ...)"

  private:
    std::vector<Rational> prefix_;  // canonical: no trailing entries equal to tail
    Rational tail_;
};

enum class Ambient { linf, c0, l1 };

// Finitely generated subspace with exact-rank independent generators.
struct SeqSubspace {
    std::vector<EvSeq> generators;
    Ambient ambient = Ambient::linf;

    SeqSubspace() = default;
    SeqSubspace(std::vector<EvSeq> gens, Ambient amb);
    int dim() const { return static_cast<int>(generators.size()); }
};

// Dual pairing sum_i ell_i x_i; ell must be finitely supported.
Rational pair(const EvSeq& ell, const EvSeq& x);

// Exact membership in the span of the given sequences.
bool in_span(const std::vector<EvSeq>& basis, const EvSeq& v);

// Exact basis of {ell : supp(ell) in [0..truncation), pair(ell, f) = 0 for
// all f in F}, as a subspace of the l_1 model.
SeqSubspace preannihilator_truncated(const SeqSubspace& f, int truncation);

// The elements of c_0 annihilated by every functional in the full
// (infinite) preannihilator of F. The infinite constraint family collapses:
// beyond the longest generator prefix, difference functionals force the
// coordinates to agree, and the c_0 tail then forces them to zero, leaving
// a finite exact solve. Basis vectors are scaled integer-primitive with
// positive leading coordinate.
SeqSubspace pre_pre_annihilator_c0(const SeqSubspace& f);

// max(|x|, |y|, |x+y|): the norm pulled back from the span of
// (1,0,1,1,...) and (0,1,1,1,...) under the sup norm.
Rational hexagon_norm(const Rational& x, const Rational& y);

struct KobosReport {
    std::vector<EvSeq> f_basis;   // the two eventually-one generators
    std::vector<EvSeq> v_basis;   // expected: span{(1,-1,0,...)}
    std::vector<EvSeq> g0_basis;  // expected: span{e_1, e_2}
    std::vector<int> u_constraint_coords;  // U = {x in c0 : x_i = 0, i in list}

    // Non-membership certificate for the witness: any v + u matching the
    // witness at forcing_coord pins the V-coefficient, and mismatch_coord
    // then disagrees.
    EvSeq witness;
    Rational forced_coefficient;
    int forcing_coord = 0;
    int mismatch_coord = 0;
    Rational decomposition_value;  // coordinate of v + u at mismatch_coord
    Rational witness_value;        // coordinate of the witness there
    bool witness_outside_direct_sum = false;

    // lambda(V, c_0) = 1 exactly, certified by a norm-one projection.
    Rational lambda_v;
    std::vector<Rational> norming_functional;  // the functional behind it

    // lambda of the two-dimensional span in its 3-coordinate embedding,
    // computed by LP over l_inf^3 (floating point, reported with its dual
    // bound). Strictly above 1, which is the refutation.
    double lambda_f = 0.0;
    double lambda_f_dual_bound = 0.0;
    bool equality_refuted = false;

    int truncation = 0;
    int truncated_preannihilator_dim = 0;
    bool truncated_checks_pass = false;
};

// Builds the full counterexample report. Everything except lambda_f is
// exact rational arithmetic.
KobosReport kobos_report(int truncation = 8);

}  // namespace projconst::seqmodel
