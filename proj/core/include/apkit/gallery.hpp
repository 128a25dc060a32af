// Copyright 2026 The apkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Named example functions and a classifier that places a sampled function
// in the chain SAP, S^1, W^1, MAP on a finite scan range.

#ifndef APKIT_GALLERY_HPP_
#define APKIT_GALLERY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "apkit/domain.hpp"
#include "apkit/signals.hpp"
#include "apkit/stepanov.hpp"
#include "apkit/weyl.hpp"

namespace apkit {

/// f(x) = |u|^(-1/2) with u = x - floor(x + 1/2): the 1-periodic extension of
/// |x|^(-1/2) on [-1/2, 1/2). Throws DomainError if a sample hits u = 0.
GridFunction periodized_inverse_sqrt(const DomainSpec& domain);

/// f(x) = sin(1 / (2 + cos(alpha x) + cos(beta x))).
GridFunction levitan_example(const DomainSpec& domain, double alpha = 1.0, double beta = 1.4142135623730951);

/// 0 for x < 0, x on [0, 1], 1 for x > 1.
GridFunction half_step(const DomainSpec& domain);

std::vector<std::string> gallery_names();
/// Builds a gallery function by name; ArgumentError for unknown names.
GridFunction gallery_function(const std::string& name, const DomainSpec& domain);

enum class ClassVerdict { kPass, kFail, kInconclusive };
std::string to_string(ClassVerdict v);

struct ClassifyConfig {
  std::vector<double> epsilons{0.5};
  std::optional<Window> k;               // default A_1
  std::optional<VanHoveSequence> seq;    // default centered cubes
  ScanRange scan_range;
  double gap_bound = 0.0;
  std::size_t n_max = 30;
  std::optional<double> uc_threshold;    // default min(epsilons) / 4
};

struct ClassEvidence {
  double epsilon = 0.0;
  std::size_t periods = 0;
  double max_gap = 0.0;
  bool relatively_dense = false;
  std::size_t uniform_n = 0;  // W^1 only
};

struct ClassResult {
  std::string name;  // "SAP", "S1", "W1", "MAP"
  ClassVerdict verdict = ClassVerdict::kInconclusive;
  std::vector<ClassEvidence> evidence;  // one per epsilon (none for MAP)
  std::string note;
};

struct ClassifyReport {
  std::vector<ClassResult> classes;  // SAP, S1, W1, MAP in chain order
  std::size_t n_effective = 0;
  double one_cell_modulus = 0.0;     // max |f(x + h) - f(x)| (0 on discrete domains)
  double uc_threshold = 0.0;
  double upper_mean = 0.0;           // M(|f|) at y = 0 along A_{n_effective}
  double upper_mean_gap = 0.0;
  bool chain_consistent = true;
};

/// Runs the four membership tests with a shared epsilon list, scan range and
/// window. A class passes if it passes at every epsilon. Throws Error if the
/// verdicts break the chain SAP => S1 => W1 => MAP.
ClassifyReport classify(const GridFunction& f, const ClassifyConfig& config);

}  // namespace apkit

#endif  // APKIT_GALLERY_HPP_
