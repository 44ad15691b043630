#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace wavebeam {

/// A physical or numerical parameter is outside its admissible range.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The boundary-function families need k != 0.
class UnsupportedWavenumber : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

/// Raised when S*T of a boundary block is numerically singular.
class DegenerateState : public std::runtime_error {
 public:
  DegenerateState(int index, const char* family, double Omega, double K)
      : std::runtime_error(format(index, family, Omega, K)),
        index_(index),
        family_(family),
        Omega_(Omega),
        K_(K) {}

  int index() const noexcept { return index_; }
  const std::string& family() const noexcept { return family_; }
  double Omega() const noexcept { return Omega_; }
  double K() const noexcept { return K_; }

 private:
  static std::string format(int index, const char* family, double Omega, double K) {
    std::ostringstream os;
    os << "degenerate boundary block (index " << index << ", family " << family
       << ") at Omega=" << Omega << ", K=" << K;
    return os.str();
  }

  int index_;
  std::string family_;
  double Omega_;
  double K_;
};

/// A forced internal Fourier cell is singular (the mode (m, n) resonates).
class InternalResonance : public std::runtime_error {
 public:
  InternalResonance(int m, int n, double Omega, double K)
      : std::runtime_error(format(m, n, Omega, K)), m_(m), n_(n), Omega_(Omega), K_(K) {}

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  double Omega() const noexcept { return Omega_; }
  double K() const noexcept { return K_; }

 private:
  static std::string format(int m, int n, double Omega, double K) {
    std::ostringstream os;
    os << "internal resonance in cell (" << m << ", " << n << ") at Omega=" << Omega
       << ", K=" << K;
    return os.str();
  }

  int m_;
  int n_;
  double Omega_;
  double K_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotARoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested branch sample lies where branches cannot be separated.
class BlindArea : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wavebeam
