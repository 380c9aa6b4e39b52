#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/rational.hpp"

namespace fusionforge {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

constexpr double kDefaultTol = 1e-9;
constexpr double kFusionIntTol = 1e-6;

struct Label {
    int index = 0;
    std::string display_name;
};

/// Fusion multiplicities N_{ij}^k as a dense 3-index tensor.
class FusionTensor {
public:
    FusionTensor() : n_(0) {}
    explicit FusionTensor(int n) : n_(n), a_(std::size_t(n) * n * n, 0) {}

    int size() const { return n_; }
    std::int64_t& at(int i, int j, int k) { return a_[idx(i, j, k)]; }
    std::int64_t at(int i, int j, int k) const { return a_[idx(i, j, k)]; }

    bool operator==(const FusionTensor& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    std::size_t idx(int i, int j, int k) const {
        return (std::size_t(i) * n_ + j) * n_ + k;
    }
    int n_;
    std::vector<std::int64_t> a_;
};

/// The finite data of a modular tensor category: labels, exact conformal
/// weights, central charge, the S-matrix in the unitary symmetric
/// normalization, and optionally the fusion tensor and duality permutation.
/// Label 0 is always the vacuum.
struct ModularData {
    std::string name;
    std::vector<Label> labels;
    Rational central_charge;
    std::vector<Rational> conf_weights;
    CMatrix s_matrix;
    std::optional<FusionTensor> fusion;
    std::vector<int> dual;

    int size() const { return int(labels.size()); }
    Complex twist(int i) const { return exp2pi(conf_weights[i]); }
};

struct AxiomCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    std::vector<int> where;  // offending index tuple, empty if none
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    double worst_residual() const {
        double w = 0.0;
        for (const auto& c : checks) w = std::max(w, c.residual);
        return w;
    }
};

/// N_{ij}^k = sum_m S_im S_jm conj(S_km) / S_0m, rounded to integers.
/// Throws NonIntegerFusion / NegativeFusion when S is not modular data.
FusionTensor verlinde_fusion(const ModularData& md, double int_tol = kFusionIntTol);

/// S_{0i}/S_{00}; must be real within tol.
double qdim(const ModularData& md, int i, double tol = kDefaultTol);

/// Monodromy charge of the simple current j against x,
/// exp(2 pi i (h_{j x} - h_j - h_x)) from exact weights.
Complex monodromy_charge(const ModularData& md, int j, int x);

/// Exact rational exponent of the monodromy charge (mod 1).
Rational monodromy_exponent(const ModularData& md, int j, int x);

enum class GradedType { ZVoa, ZVosa, HalfZVosa, HalfZVoa };

std::string to_string(GradedType t);

/// Self-dual order-2 simple current classification by (theta, qdim):
/// (+,+) -> Z-VOA, (+,-) -> Z-VOSA, (-,+) -> 1/2Z-VOSA, (-,-) -> 1/2Z-VOA.
GradedType classify_simple_current(const ModularData& md, int j, double tol = kDefaultTol);

/// Kronecker product of two data sets: labels are pairs (row-major),
/// S multiplies entrywise, h and c add.
ModularData tensor_product(const ModularData& a, const ModularData& b);

AxiomReport check_axioms(const ModularData& md, double tol = kDefaultTol);

/// Requires the fusion tensor; returns the unique k with N_{jx}^k = 1 and
/// validates that row (j,x) has total multiplicity one.
int fusion_image(const ModularData& md, int j, int x);

bool is_invertible(const ModularData& md, int j);

/// Trivial one-label data (unit category).
ModularData trivial_data();

}  // namespace fusionforge
