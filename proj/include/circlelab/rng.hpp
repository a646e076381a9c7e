#pragma once

#include <random>

namespace circlelab {

// Deterministic sample source for experiments and tests: mt19937_64 with an
// explicit bits-to-real map, so streams reproduce exactly across platforms
// and standard-library versions (std::uniform_real_distribution does not
// guarantee that).
class SampleRng {
  public:
    explicit SampleRng(unsigned long long seed) : eng_(seed) {}

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Uniform index in [0,n). The modulo bias is far below anything our
    // sample counts can detect.
    long index(long n) {
        return static_cast<long>(eng_() % static_cast<unsigned long long>(n));
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace circlelab
