#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "subsep/description.hpp"
#include "subsep/product_finder.hpp"

namespace subsep {

enum class ClassTag {
  BLM_NoProduct,
  BLM_OneProduct,
  BLM_1x2,
  BLM_2x1,
  BLM_2x2,
  C_1x3,
  C_3x1,
  C_3x3,
  C_2x3_i,
  C_2x3_ii,
  C_3x2_i,
  C_3x2_ii,
  C_2x2_i,
  C_2x2_ii,
};

inline constexpr std::array<ClassTag, 14> kAllTags = {
    ClassTag::BLM_NoProduct, ClassTag::BLM_OneProduct, ClassTag::BLM_1x2,  ClassTag::BLM_2x1,
    ClassTag::BLM_2x2,       ClassTag::C_1x3,          ClassTag::C_3x1,    ClassTag::C_3x3,
    ClassTag::C_2x3_i,       ClassTag::C_2x3_ii,       ClassTag::C_3x2_i,  ClassTag::C_3x2_ii,
    ClassTag::C_2x2_i,       ClassTag::C_2x2_ii};

std::string to_string(ClassTag t);
ClassTag parse_class_tag(const std::string& s);
/// Tag obtained by exchanging the two subsystems.
ClassTag mirror(ClassTag t);

/// A pair of spanning products whose factors coincide on one group.
struct CoincidingPair {
  int group;
  int first;
  int second;
};

struct ClassificationResult {
  ClassTag tag = ClassTag::BLM_NoProduct;
  int dim_S = 0;
  int dim_S_sep = 0;
  std::vector<int> local_dims;
  ProductStateSet witnesses;
  std::vector<CoincidingPair> coinciding;
  SeparableSetDescription description;
  std::vector<std::string> warnings;
};

ClassificationResult classify_dim2(const SubspaceBasis& basis, const Partition& cut, const ToleranceConfig& tol,
                                   std::uint64_t seed);
ClassificationResult classify_dim3(const SubspaceBasis& basis, const Partition& cut, const ToleranceConfig& tol,
                                   std::uint64_t seed);
/// Dispatch on the subspace dimension (1, 2 or 3).
ClassificationResult classify_bipartite(const SubspaceBasis& basis, const Partition& cut, const ToleranceConfig& tol,
                                        std::uint64_t seed);

/// Requires alphas and betas to be dependent triples in general position.
LinearMapL build_L_map(const std::vector<Vec>& alphas, const std::vector<Vec>& betas, double tol = 1e-8);

SeparableSetDescription describe_separable_set(const ClassificationResult& result, const SubspaceBasis& basis);

}  // namespace subsep
