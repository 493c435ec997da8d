#include "jigsaw/kernels.hpp"

#include <exception>

#include "jigsaw/error.hpp"

namespace jigsaw::kernels {

namespace {

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw Error(Errc::size_mismatch, "kernel input and output lengths differ");
}

// Exceptions must not cross an OpenMP region boundary; capture the first one
// and rethrow after the loop.
class FirstError {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(jigsaw_kernel_error)
      if (!err_) err_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (err_) std::rethrow_exception(err_);
  }

 private:
  std::exception_ptr err_;
};

}  // namespace

namespace ref {

void embed_parts(std::span<const Part> parts, std::span<const std::size_t> offsets, std::size_t ps,
                 std::span<Block> out) {
  check_sizes(parts.size(), out.size());
  check_sizes(offsets.size(), out.size());
  for (std::size_t i = 0; i < parts.size(); ++i) out[i] = embed(affix(parts[i], ps), offsets[i], ps);
}

void mask_blocks(std::span<const Block> in, std::span<const Block> pads, std::span<Block> out) {
  check_sizes(in.size(), out.size());
  check_sizes(pads.size(), out.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] ^ pads[i];
}

void extract_parts(std::span<const Block> in, std::span<Part> out) {
  check_sizes(in.size(), out.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = extract(in[i]);
}

}  // namespace ref

namespace par {

void embed_parts(std::span<const Part> parts, std::span<const std::size_t> offsets, std::size_t ps,
                 std::span<Block> out) {
  check_sizes(parts.size(), out.size());
  check_sizes(offsets.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(parts.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    err.run([&] { out[i] = embed(affix(parts[i], ps), offsets[i], ps); });
  }
  err.rethrow();
}

void mask_blocks(std::span<const Block> in, std::span<const Block> pads, std::span<Block> out) {
  check_sizes(in.size(), out.size());
  check_sizes(pads.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    err.run([&] { out[i] = in[i] ^ pads[i]; });
  }
  err.rethrow();
}

void extract_parts(std::span<const Block> in, std::span<Part> out) {
  check_sizes(in.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    err.run([&] { out[i] = extract(in[i]); });
  }
  err.rethrow();
}

}  // namespace par

}  // namespace jigsaw::kernels
