#pragma once

#include "zipflag/cone.hpp"
#include "zipflag/strata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zf {

// Pairing tests of a character against the coroots.
struct CharacterTests {
  bool q_small = true;
  bool orbitally_q_close = true;
  int q_small_witness = -1;                       // root whose coroot pairs beyond q-1
  std::pair<int, int> orbit_witness{-1, -1};      // (largest, smallest nonzero) in a bad orbit
};

// Orbits are taken under W and the Galois twist together.
CharacterTests character_tests(const RootDatum& rd, const Vec& chi, const BigInt& q);

struct Ampleness {
  bool ample = false;
  int witness = -1;                 // first simple root whose pairing is not negative
  std::vector<int> tested;          // simple roots of Delta minus gamma^{-n}(J)
  std::vector<long long> pairings;  // <chi, gamma^{-n}(z) alpha^vee> over tested
};

// Zip-ampleness: <chi, gamma^{-n}(z) alpha^vee> < 0 for alpha in Delta minus
// gamma^{-n}(J). Requires chi in X*(L).
Ampleness ampleness(const ZipDatum& Z, const Vec& chi);
// The same pairings without the lattice check.
Ampleness ample_pairings(const ZipDatum& Z, const Vec& chi);

struct FlagAmpleness {
  bool ample = false;         // Z0-ampleness; requires chi in X*(L0)
  Ampleness z0;
  // The remark's form as printed: <chi, alpha^vee> > 0 on I minus I0 and
  // < 0 on Phi^+ minus Phi_L^+. Outside P0 = G it holds for -chi exactly when
  // chi is Z0-ample.
  bool remark_form = false;
  int remark_witness = -1;
};
FlagAmpleness flag_ampleness(const FlaggedZipDatum& F, const Vec& chi);

bool in_levi_lattice(const RootDatum& rd, const Subset& K, const Vec& chi);

struct CharacterVerdict {
  Vec chi;
  BigInt q;
  CharacterTests tests;
  bool zip_ample = false;
  std::optional<bool> flag_ample;
  std::vector<std::string> witnesses;  // one line per false flag
};
CharacterVerdict character_verdict(const ZipDatum& Z, const Vec& chi);
CharacterVerdict character_verdict(const FlaggedZipDatum& F, const Vec& chi);

// w^{(r)}: w^{(0)} = e, w^{(r)} = sigma(w^{(r-1)} w), sigma = gamma^{-n} on W.
int twist_power(const ZipDatum& Z, int w, int r);

struct TwistPeriod {
  int r_w = 1;  // least r >= 1 with (w gamma^n(z))^{(r)} = e
  int m = 1;    // order of gamma
};
TwistPeriod r_w(const ZipDatum& Z, int w);

// Readings of the multiplicity formula. With y = w z^{-1}, x = z w^{-1} and
// sigma = gamma^{-n}:
//   Verbatim          +sum q^i < x^{(i)} sigma^i chi, w alpha^vee >
//   Calibrated        -sum q^i < sigma^i chi, y^{(i)} w alpha^vee >
//   PrintedTwistSide  -sum q^i < x^{(i)} sigma^i chi, w alpha^vee >
//   SwappedZ          Calibrated with y = z^{-1} w
// Each sum runs over one full period N of its twisted-power sequence.
enum class Reading { Verbatim, Calibrated, PrintedTwistSide, SwappedZ };

std::string reading_name(Reading r);
std::optional<Reading> parse_reading(const std::string& s);

// The reading reproducing the worked example and the sufficient condition;
// computed once by calibrate() below.
Reading default_reading();

struct CalibrationReport {
  Reading selected = Reading::Calibrated;
  std::vector<std::pair<Reading, std::string>> rejected;  // reading and first failure
};
CalibrationReport calibrate();
// Empty when the reading reproduces the worked example and the sufficient
// condition; otherwise the first failing check.
std::string reading_check(Reading reading);

// Least N >= 1, divisible by the order of gamma^n, after which the twisted
// power sequence of the reading returns to e.
int period(const ZipDatum& Z, int w, Reading reading);

bool is_stratum_label(const ZipDatum& Z, int w);

BigInt n_alpha(const ZipDatum& Z, int w, const Vec& chi, int alpha, Reading reading = default_reading());
// Coefficients of chi -> n_alpha(chi).
BigVec n_alpha_form(const ZipDatum& Z, int w, int alpha, Reading reading = default_reading());

struct SectionVerdict {
  int w = 0;
  Vec chi;
  std::vector<int> roots;  // E_w in display order
  std::vector<BigInt> values;
  bool verdict = true;
  TwistPeriod period_info;
  int period = 1;
  Reading reading = Reading::Calibrated;
};
SectionVerdict char_section_verdict(const ZipDatum& Z, int w, const Vec& chi, Reading reading = default_reading());

enum class Lattice { Torus, Levi, Levi0 };
std::string lattice_name(Lattice l);
std::optional<Lattice> parse_lattice(const std::string& s);

struct SectionCone {
  int w = 0;
  Lattice lattice = Lattice::Levi;
  Subset equal_on;              // simple roots beta with <chi, beta^vee> = 0
  std::vector<BigVec> basis;    // integral basis of the lattice (rational span)
  std::vector<int> roots;       // E_w
  std::vector<BigVec> forms;    // n_alpha as integer linear forms in chi
  bool feasible = false;
  std::optional<Vec> witness;
  bool witness_from_hint = false;
  BigVec certificate;           // multipliers over forms
};

struct ConeOptions {
  Lattice lattice = Lattice::Levi;
  Subset I0;                    // used by Lattice::Levi0
  std::vector<Vec> hints;       // tried as witnesses before the eliminated system
  Reading reading = default_reading();
};

SectionCone section_cone(const ZipDatum& Z, int w, const ConeOptions& opt = {});

// Replays the certificate: sum_i y_i n_{alpha_i}(chi) vanishes on the lattice,
// so the strict system would give 0 > 0.
bool replay_infeasibility(const SectionCone& c);
bool witness_verifies(const ZipDatum& Z, const SectionCone& c, Reading reading = default_reading());

struct PurityOptions {
  std::optional<Lattice> lattice;  // default: Levi for zip data, Levi0 for flags
  int box = 2;
  std::vector<Vec> hints;
  int workers = 1;
  Reading reading = default_reading();
};

struct PurityReport {
  bool flagged = false;
  Lattice lattice = Lattice::Levi;
  std::vector<SectionCone> cones;  // one per stratum, in stratum order
  bool principal = true;
  bool uniform = true;
  std::optional<Vec> uniform_witness;
  BigVec uniform_certificate;      // multipliers over uniform_forms
  std::vector<BigVec> uniform_forms;
  std::vector<BigVec> uniform_basis;  // lattice basis the certificate is taken over
  // Sufficient condition: an ample, orbitally q-close character in the lattice.
  std::optional<Vec> sufficient;
  bool sufficient_consistent = true;  // such a character passes every stratum
  Reading reading = Reading::Calibrated;
};

PurityReport purity_report(const ZipDatum& Z, const PurityOptions& opt = {});
// Replays the uniform certificate on the forms restricted to the lattice.
bool replay_uniform_infeasibility(const PurityReport& r);
// Fine flag strata: the cones of the induced datum Z0.
PurityReport purity_report(const FlaggedZipDatum& F, const PurityOptions& opt = {});

struct GLCertificate {
  ZipDatum Z;
  Vec lambda;
  CharacterVerdict verdict;
};
// GL_N with Levi blocks N1, ..., Nr and the blockwise character (r, ..., r, r-1, ..., 1).
GLCertificate gln_certificate(const std::vector<int>& blocks, const BigInt& p, int n = 1);

}  // namespace zf
