#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <string_view>

#include "tracekit/groups/matrix.hpp"

namespace tracekit {

enum class HFamily { SL2R, SL3R, SO12, O11, SO2, O12_COMPACTDEMO, HEIS3, UNIP4, ADJ_SL2R };

std::string_view hfamily_name(HFamily f);

/// The ambient group N x| H with N = R^d.
struct SemidirectDescriptor {
    int n_dim = 0;
    HFamily h_family = HFamily::SL2R;
    Family group_family = Family::SL2R;
    std::function<Eigen::MatrixXd(const GroupElement&)> action;
    Eigen::MatrixXd pairing;
};

SemidirectDescriptor make_semidirect(HFamily f);

/// Random element of the group H used by invariance and trajectory checks.
GroupElement random_h(const SemidirectDescriptor& sd, std::mt19937_64& rng, double scale = 1.0);

struct CharacterPoint {
    Eigen::VectorXd xi;
    Eigen::MatrixXd pairing;
};

CharacterPoint character_point(const SemidirectDescriptor& sd, const Eigen::VectorXd& xi);

/// chi_xi(x) = exp(-2 pi i <x, xi>).
cplx character_value(const CharacterPoint& c, const Eigen::VectorXd& x);

/// xi' with chi_xi'(x) = chi_xi(h^{-1} . x); throws FamilyMismatch.
CharacterPoint dual_action(const SemidirectDescriptor& sd, const GroupElement& h,
                           const CharacterPoint& xi);

/// Action matrix of H on N for the unipotent families, obtained by conjugating
/// the N-parameter basis matrices inside the ambient matrix group.
Eigen::MatrixXd conjugation_action(HFamily f, const GroupElement& h);

/// Ambient matrix of the N-parameters b for HEIS3 and UNIP4.
Mat n_matrix(HFamily f, const Eigen::VectorXd& b);

/// H-element with parameters a (HEIS3: a1, a2; UNIP4: x, y).
GroupElement h_element(HFamily f, double p0, double p1);

}  // namespace tracekit
