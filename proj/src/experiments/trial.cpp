#include "ota/experiments/trial.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "ota/channel.hpp"
#include "ota/dummy_schemes.hpp"
#include "ota/errors.hpp"
#include "ota/numerics/sampling.hpp"
#include "ota/ota_core.hpp"
#include "ota/simd/kernels.hpp"

namespace ota::experiments {
namespace {

constexpr std::uint64_t kFixedGeometryTag = 0xF1CED;
constexpr std::uint64_t kAttackerFadingTag = 0xFADB;
constexpr std::size_t kMaxRedraws = 10000;

RngStream trial_root(const SystemConfig& c, Hypothesis h, std::uint64_t block,
                     std::uint64_t attempt) {
  return RngStream(c.seed, mix_stream_id({block, h == Hypothesis::kH1 ? 1u : 0u,
                                          attempt}));
}

struct ChannelDraw {
  ChannelRealization ch;
  RngStream root;
  std::size_t redraws = 0;
};

ChannelRealization fixed_channels(const SystemConfig& c, std::size_t& redraws,
                                  double& attacker_distance) {
  for (std::uint64_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
    RngStream root(c.seed, mix_stream_id({kFixedGeometryTag, attempt}));
    RngStream geo_rng = root.derive(streams::kGeometry);
    RngStream fad_rng = root.derive(streams::kFading);
    const Geometry geom = place_nodes(c.K, c.radius, geo_rng);
    try {
      auto ch = realize_channels(geom, fad_rng, c.fading_threshold,
                                 c.pathloss_exponent);
      redraws = attempt;
      attacker_distance = geom.attacker_distance;
      return ch;
    } catch (const InvalidBlockError&) {
    }
  }
  throw std::runtime_error("no block with participants after many redraws");
}

ChannelDraw draw_channels(const SystemConfig& c, Hypothesis h,
                          std::uint64_t block) {
  if (c.geometry == GeometryMode::kFixed) {
    std::size_t redraws = 0;
    double d_b = 0.0;
    ChannelRealization ch = fixed_channels(c, redraws, d_b);
    RngStream root = trial_root(c, h, block, 0);
    RngStream att = root.derive(kAttackerFadingTag);
    const ComplexVector g_b = sample_complex_gaussian(1, 1.0, att);
    ch.h_b = g_b(0) * std::pow(d_b, -0.5 * c.pathloss_exponent);
    return {std::move(ch), std::move(root), redraws};
  }
  for (std::uint64_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
    RngStream root = trial_root(c, h, block, attempt);
    RngStream geo_rng = root.derive(streams::kGeometry);
    RngStream fad_rng = root.derive(streams::kFading);
    const Geometry geom = place_nodes(c.K, c.radius, geo_rng);
    try {
      auto ch = realize_channels(geom, fad_rng, c.fading_threshold,
                                 c.pathloss_exponent);
      return {std::move(ch), std::move(root), attempt};
    } catch (const InvalidBlockError&) {
    }
  }
  throw std::runtime_error("no block with participants after many redraws");
}

struct Outcome {
  double statistic = 0.0;
  double eta = 0.0;
  double sigma_tilde2 = 0.0;
};

double legit_symbol_power(const SystemConfig& c) {
  double p = c.P0 * c.legit_power_factor;
  if (c.scheme == SchemeKind::kUncorrelated) {
    const double L = static_cast<double>(c.L);
    p *= L / (L + static_cast<double>(c.D()));
  }
  return p;
}

// Materialises every matrix of the block.
Outcome full_trial(const SystemConfig& c, const ChannelRealization& ch,
                   const AttackStrategy& attack, const RngStream& root) {
  RngStream shared = root.derive(streams::kSharedSecret);
  RngStream data_rng = root.derive(streams::kData);
  RngStream attack_rng = root.derive(streams::kAttack);
  RngStream noise_rng = root.derive(streams::kNoise);
  const std::size_t D = c.D();
  const double sigma2 = c.noise_variance();

  const ComplexMatrix real_data =
      sample_ginibre(c.L, ch.k_active, c.data_variance, data_rng);
  const CompositeBlock block =
      c.scheme == SchemeKind::kCorrelated
          ? build_correlated(real_data, D, shared)
          : build_uncorrelated(real_data, D, c.dummy_variance(), shared, data_rng);

  const auto users = ch.active_users();
  const std::vector<double> col_peaks = peak_amplitudes(block);
  std::vector<double> peaks(c.K, 0.0);
  for (std::size_t k = 0; k < users.size(); ++k) peaks[users[k]] = col_peaks[k];
  const double eta = amplitude_scaling_factor(ch, peaks, legit_symbol_power(c));

  TransmitBlock tx;
  tx.signals = precode_block(block.transmit, ch, eta);
  tx.attacker_signal = generate_attack(attack, block.length(), c.P0,
                                       std::span<const std::size_t>(block.dummy_indices),
                                       attack_rng);
  ReceivedBlock rx;
  rx.y_raw = superpose(tx, ch, sigma2, noise_rng);
  rx.y = postprocess(rx.y_raw, eta);
  rx.eta = eta;
  const DetectionVector dv =
      extract_detection_vector(rx, block, ch.k_active, eta, sigma2);
  return {energy_statistic(dv.y_d), eta, dv.effective_noise_variance};
}

// Largest of n i.i.d. Exp(mean) variates by inversion of F^n.
double max_of_exponentials(std::size_t n, double mean, RngStream& rng) {
  const double u = rng.uniform();
  return -mean * std::log(-std::expm1(std::log(u) / static_cast<double>(n)));
}

// Only the D dummy coordinates are simulated. The L data symbols of a user
// matter only through their peak power, drawn directly from its law.
Outcome fast_uncorrelated(const SystemConfig& c, const ChannelRealization& ch,
                          const AttackStrategy& attack, const RngStream& root) {
  RngStream shared = root.derive(streams::kSharedSecret);
  RngStream data_rng = root.derive(streams::kData);
  RngStream attack_rng = root.derive(streams::kAttack);
  RngStream noise_rng = root.derive(streams::kNoise);
  const auto& kern = simd::active();
  const std::size_t D = c.D();
  const std::size_t N = c.L + D;
  const double sigma2 = c.noise_variance();
  const double sd2 = c.dummy_variance();

  const std::vector<std::size_t> dummy = draw_dummy_indices(c.L, D, shared);
  std::vector<double> acc_re(D, 0.0), acc_im(D, 0.0), d_re(D), d_im(D);
  std::vector<double> peaks(c.K, 0.0);
  for (std::size_t k : ch.active_users()) {
    const double data_peak2 = max_of_exponentials(c.L, c.data_variance, data_rng);
    fill_complex_gaussian(d_re.data(), d_im.data(), D, sd2, data_rng);
    peaks[k] = std::sqrt(std::max(data_peak2, kern.max_abs2(d_re.data(), d_im.data(), D)));
    kern.caxpy(D, 1.0, 0.0, d_re.data(), d_im.data(), acc_re.data(), acc_im.data());
  }
  const double eta = amplitude_scaling_factor(ch, peaks, legit_symbol_power(c));
  kern.cscal(D, 1.0 / static_cast<double>(ch.k_active), 0.0, acc_re.data(),
             acc_im.data());

  const ComplexVector b = generate_attack(attack, N, c.P0,
                                          std::span<const std::size_t>(dummy),
                                          attack_rng);
  const cplx gain = ch.h_b / eta;
  for (std::size_t j = 0; j < D; ++j) {
    const cplx v = gain * b(static_cast<Eigen::Index>(dummy[j]));
    acc_re[j] += v.real();
    acc_im[j] += v.imag();
  }
  fill_complex_gaussian(d_re.data(), d_im.data(), D, sigma2, noise_rng);
  kern.caxpy(D, 1.0 / eta, 0.0, d_re.data(), d_im.data(), acc_re.data(),
             acc_im.data());
  return {kern.sum_abs2(acc_re.data(), acc_im.data(), D), eta,
          sigma2 / (eta * eta) + sd2 / static_cast<double>(ch.k_active)};
}

// U X has the law of P Z with Z i.i.d. Gaussian and P the projector onto the
// complement of the dummy columns U_D; only U_D is drawn. The users cancel
// exactly in U_D^H y, leaving y_d = U_D^H (h_b b + z) / eta.
Outcome fast_correlated_dummy_basis(const SystemConfig& c,
                                    const ChannelRealization& ch,
                                    const AttackStrategy& attack,
                                    const RngStream& root) {
  RngStream shared = root.derive(streams::kSharedSecret);
  RngStream data_rng = root.derive(streams::kData);
  RngStream attack_rng = root.derive(streams::kAttack);
  RngStream noise_rng = root.derive(streams::kNoise);
  const auto& kern = simd::active();
  const std::size_t D = c.D();
  const std::size_t N = c.L + D;
  const double sigma2 = c.noise_variance();

  const std::vector<std::size_t> dummy = draw_dummy_indices(c.L, D, shared);
  const SplitMatrix ud = sample_haar_isometry_split(N, D, shared);

  std::vector<double> peaks(c.K, 0.0);
  std::vector<double> z_re(N), z_im(N);
  std::vector<double> c_re(D), c_im(D);
  for (std::size_t k : ch.active_users()) {
    fill_complex_gaussian(z_re.data(), z_im.data(), N, c.data_variance, data_rng);
    for (std::size_t j = 0; j < D; ++j)
      kern.cdotc(N, ud.re(j), ud.im(j), z_re.data(), z_im.data(), &c_re[j], &c_im[j]);
    for (std::size_t j = 0; j < D; ++j)
      kern.caxpy(N, -c_re[j], -c_im[j], ud.re(j), ud.im(j), z_re.data(), z_im.data());
    peaks[k] = std::sqrt(kern.max_abs2(z_re.data(), z_im.data(), N));
  }
  const double eta = amplitude_scaling_factor(ch, peaks, legit_symbol_power(c));

  const ComplexVector b = generate_attack(attack, N, c.P0,
                                          std::span<const std::size_t>(dummy),
                                          attack_rng);
  fill_complex_gaussian(z_re.data(), z_im.data(), N, sigma2, noise_rng);
  for (std::size_t i = 0; i < N; ++i) {
    const cplx v = ch.h_b * b(static_cast<Eigen::Index>(i));
    z_re[i] += v.real();
    z_im[i] += v.imag();
  }
  double stat = 0.0;
  for (std::size_t j = 0; j < D; ++j) {
    double re = 0.0, im = 0.0;
    kern.cdotc(N, ud.re(j), ud.im(j), z_re.data(), z_im.data(), &re, &im);
    stat += re * re + im * im;
  }
  const double inv_eta2 = 1.0 / (eta * eta);
  return {stat * inv_eta2, eta, sigma2 * inv_eta2};
}

// U X = (U_data Q) R with X_L = Q R: a Haar N x K_active isometry, drawn as
// G T^-1 from a Ginibre G with T = chol(G^H G), times an independent complex
// Bartlett factor R. For an i.i.d. Gaussian perturbation y_d is independent
// of U, so it is drawn directly in D dimensions.
Outcome fast_correlated_user_basis(const SystemConfig& c,
                                   const ChannelRealization& ch,
                                   const AttackStrategy& attack,
                                   const RngStream& root) {
  RngStream shared = root.derive(streams::kSharedSecret);
  RngStream data_rng = root.derive(streams::kData);
  RngStream attack_rng = root.derive(streams::kAttack);
  RngStream noise_rng = root.derive(streams::kNoise);
  const auto& kern = simd::active();
  const std::size_t D = c.D();
  const std::size_t N = c.L + D;
  const std::size_t ka = ch.k_active;
  const auto n_ka = static_cast<Eigen::Index>(ka);
  const double sigma2 = c.noise_variance();

  (void)draw_dummy_indices(c.L, D, shared);

  SplitMatrix g(N, ka);
  fill_complex_gaussian(g, 1.0, data_rng);
  ComplexMatrix gram(n_ka, n_ka);
  for (std::size_t j = 0; j < ka; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      double re = 0.0, im = 0.0;
      kern.cdotc(N, g.re(i), g.im(i), g.re(j), g.im(j), &re, &im);
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cplx(re, im);
      gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = cplx(re, -im);
    }
  }
  const Eigen::LLT<ComplexMatrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("Gram matrix of the user basis is singular");

  const double sd = std::sqrt(c.data_variance);
  ComplexMatrix r = ComplexMatrix::Zero(n_ka, n_ka);
  for (std::size_t k = 0; k < ka; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    r(kk, kk) = sd * std::sqrt(sample_gamma(static_cast<double>(c.L - k), data_rng));
    if (k > 0) {
      const ComplexVector above = sample_complex_gaussian(k, c.data_variance, data_rng);
      r.col(kk).head(kk) = above;
    }
  }
  // C = T^-1 R with T = L^H upper triangular.
  const ComplexMatrix coef = llt.matrixU().solve(r);

  std::vector<double> peaks(c.K, 0.0);
  std::vector<double> w_re(N), w_im(N);
  const auto users = ch.active_users();
  for (std::size_t k = 0; k < ka; ++k) {
    std::fill(w_re.begin(), w_re.end(), 0.0);
    std::fill(w_im.begin(), w_im.end(), 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      const cplx a = coef(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
      kern.caxpy(N, a.real(), a.imag(), g.re(j), g.im(j), w_re.data(), w_im.data());
    }
    peaks[users[k]] = std::sqrt(kern.max_abs2(w_re.data(), w_im.data(), N));
  }
  const double eta = amplitude_scaling_factor(ch, peaks, legit_symbol_power(c));

  std::vector<double> y_re(D, 0.0), y_im(D, 0.0), t_re(D), t_im(D);
  const double pb = attack_symbol_power(attack, c.P0);
  if (pb > 0.0) {
    fill_complex_gaussian(t_re.data(), t_im.data(), D, pb, attack_rng);
    kern.caxpy(D, ch.h_b.real(), ch.h_b.imag(), t_re.data(), t_im.data(),
               y_re.data(), y_im.data());
  }
  fill_complex_gaussian(t_re.data(), t_im.data(), D, sigma2, noise_rng);
  kern.caxpy(D, 1.0, 0.0, t_re.data(), t_im.data(), y_re.data(), y_im.data());
  const double inv_eta2 = 1.0 / (eta * eta);
  return {kern.sum_abs2(y_re.data(), y_im.data(), D) * inv_eta2, eta,
          sigma2 * inv_eta2};
}

bool prefer_user_basis(const SystemConfig& c, const AttackStrategy& attack,
                       std::size_t ka) {
  const std::size_t D = c.D();
  const std::size_t N = c.L + D;
  if (!attack.isotropic() || ka > c.L || N < 4 * ka) return false;
  return D * (D + 2 * ka) >= ka * ka;
}

}  // namespace

TrialRecord run_trial(const SystemConfig& config, Hypothesis hypothesis,
                      std::uint64_t block_index) {
  config.validate();
  const AttackStrategy attack = hypothesis == Hypothesis::kH1
                                    ? config.attack
                                    : AttackStrategy{AttackKind::kNone, 0.0};
  const ChannelDraw draw = draw_channels(config, hypothesis, block_index);

  Outcome out;
  if (config.pipeline == Pipeline::kFull) {
    out = full_trial(config, draw.ch, attack, draw.root);
  } else if (config.scheme == SchemeKind::kUncorrelated) {
    out = fast_uncorrelated(config, draw.ch, attack, draw.root);
  } else if (prefer_user_basis(config, attack, draw.ch.k_active)) {
    out = fast_correlated_user_basis(config, draw.ch, attack, draw.root);
  } else {
    out = fast_correlated_dummy_basis(config, draw.ch, attack, draw.root);
  }

  TrialRecord rec;
  rec.block_index = block_index;
  rec.hypothesis = hypothesis;
  rec.statistic = out.statistic;
  rec.eta = out.eta;
  rec.beta = draw.ch.beta;
  rec.k_active = draw.ch.k_active;
  rec.sigma_tilde2 = out.sigma_tilde2;
  rec.attack_power = attack_symbol_power(attack, config.P0);
  rec.redraws = draw.redraws;
  return rec;
}

std::vector<TrialRecord> run_trials(const SystemConfig& config,
                                    Hypothesis hypothesis, std::size_t count,
                                    std::uint64_t first_block) {
  config.validate();
  std::vector<TrialRecord> out(count);
  std::size_t workers = config.threads;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(count, 1));

  auto work = [&](std::size_t w, std::exception_ptr& err) {
    try {
      for (std::size_t i = w; i < count; i += workers)
        out[i] = run_trial(config, hypothesis, first_block + i);
    } catch (...) {
      err = std::current_exception();
    }
  };
  std::vector<std::exception_ptr> errors(workers);
  if (workers == 1) {
    work(0, errors[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(work, w, std::ref(errors[w]));
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace ota::experiments
