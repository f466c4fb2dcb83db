#include "kvlab/elements.hpp"

#include <stdexcept>

namespace kvlab {

const std::array<AlgorithmId, 8>& all_algorithms() {
    static const std::array<AlgorithmId, 8> v = {
        AlgorithmId::EhpJquad,   AlgorithmId::EhpUquad,   AlgorithmId::EhpUJquad,
        AlgorithmId::McapJquad,  AlgorithmId::McapUquad,  AlgorithmId::McapUJquad,
        AlgorithmId::NewmarkCAA, AlgorithmId::NewmarkLinear};
    return v;
}

const std::array<AlgorithmId, 6>& mixed_algorithms() {
    static const std::array<AlgorithmId, 6> v = {
        AlgorithmId::EhpJquad,  AlgorithmId::EhpUquad,  AlgorithmId::EhpUJquad,
        AlgorithmId::McapJquad, AlgorithmId::McapUquad, AlgorithmId::McapUJquad};
    return v;
}

std::string algorithm_name(AlgorithmId alg) {
    switch (alg) {
        case AlgorithmId::EhpJquad: return "ehp-jquad";
        case AlgorithmId::EhpUquad: return "ehp-uquad";
        case AlgorithmId::EhpUJquad: return "ehp-ujquad";
        case AlgorithmId::McapJquad: return "mcap-jquad";
        case AlgorithmId::McapUquad: return "mcap-uquad";
        case AlgorithmId::McapUJquad: return "mcap-ujquad";
        case AlgorithmId::NewmarkCAA: return "newmark-caa";
        case AlgorithmId::NewmarkLinear: return "newmark-linear";
    }
    return "unknown";
}

AlgorithmId parse_algorithm(const std::string& name) {
    for (AlgorithmId alg : all_algorithms())
        if (algorithm_name(alg) == name) return alg;
    std::string msg = "unknown algorithm '" + name + "'; valid names:";
    for (AlgorithmId alg : all_algorithms()) msg += " " + algorithm_name(alg);
    throw std::invalid_argument(msg);
}

bool is_ehp(AlgorithmId alg) {
    return alg == AlgorithmId::EhpJquad || alg == AlgorithmId::EhpUquad ||
           alg == AlgorithmId::EhpUJquad;
}

bool is_mcap(AlgorithmId alg) {
    return alg == AlgorithmId::McapJquad || alg == AlgorithmId::McapUquad ||
           alg == AlgorithmId::McapUJquad;
}

bool is_newmark(AlgorithmId alg) {
    return alg == AlgorithmId::NewmarkCAA || alg == AlgorithmId::NewmarkLinear;
}

int state_dim(AlgorithmId alg) { return is_mcap(alg) ? 2 : 3; }

StepMatrices build_step_matrices(AlgorithmId alg, const OscillatorParams& p, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("build_step_matrices: h must be positive");
    return step_matrices_signed(alg, p, h);
}

StepMatrices step_matrices_signed(AlgorithmId alg, const OscillatorParams& p, double h) {
    // extended-precision evaluation keeps every emitted entry within an ulp
    // of the exact-rational value
    auto wide = build_step_matrices_t<long double>(alg, static_cast<long double>(p.m),
                                                   static_cast<long double>(p.c),
                                                   static_cast<long double>(p.a),
                                                   static_cast<long double>(h));
    StepMatrices out;
    out.dim = wide.dim;
    out.A1 = to_double_mat(wide.A1);
    out.A0 = to_double_mat(wide.A0);
    out.B = to_double_mat(wide.B);
    return out;
}

}  // namespace kvlab
