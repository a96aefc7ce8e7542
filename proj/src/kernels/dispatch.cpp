// Copyright 2026 The openq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tables.hpp"

namespace openq::kernels {
namespace {

bool cpu_supports(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(OPENQ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(OPENQ_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select_active() {
  if (const char* env = std::getenv("OPENQ_KERNELS")) {
    const std::string want(env);
    for (Backend b : available_backends()) {
      if (backend_name(b) == want) return table(b);
    }
  }
  return table(available_backends().back());
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
  for (Backend b : {Backend::Avx2, Backend::Neon}) {
    if (cpu_supports(b)) out.push_back(b);
  }
  return out;
}

const KernelTable& table(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return detail::kScalarTable;
#if defined(OPENQ_HAVE_AVX2)
    case Backend::Avx2:
      return detail::kAvx2Table;
#endif
#if defined(OPENQ_HAVE_NEON)
    case Backend::Neon:
      return detail::kNeonTable;
#endif
    default:
      break;
  }
  throw std::invalid_argument("kernel backend not compiled in: " + std::string(backend_name(b)));
}

const KernelTable& active() {
  static const KernelTable& t = select_active();
  return t;
}

}  // namespace openq::kernels
