// SPDX-License-Identifier: Apache-2.0
//
// risim - system-level simulator for RIS-assisted multi-cell cellular networks

#include <catch2/catch_amalgamated.hpp>

#include "risim/channel.hpp"

#include <cmath>

using namespace risim;

namespace {

EnvProfile single_ray_env() {
  EnvProfile env;
  env.clusters_nlos = 1;
  env.rays_per_cluster = 1;
  env.asd_deg = env.asa_deg = env.zsd_deg = env.zsa_deg = 0.0;
  env.intra_cluster_az_deg = env.intra_cluster_zen_deg = 0.0;
  return env;
}

AntennaPanel omni_panel(int nx, int ny) {
  AntennaPanel p;
  p.n_horizontal = nx;
  p.n_vertical = ny;
  p.pattern = ElementPattern::Omni;
  return p;
}

}  // namespace

TEST_CASE("los_probability") {
  CHECK(los_probability(10.0) == 1.0);
  CHECK(los_probability(18.0) == 1.0);
  CHECK(los_probability(100.0) == Catch::Approx(0.3477).margin(5e-5));
  double prev = 1.0;
  for (double d = 19.0; d < 1000.0; d += 7.0) {
    const double p = los_probability(d);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK(p <= prev + 1e-12);
    prev = p;
  }
  CHECK_THROWS_AS(los_probability(-1.0), std::invalid_argument);
}

TEST_CASE("pathloss_uma_db known values") {
  // pre-breakpoint LOS at 100 m, 2 GHz
  CHECK(pathloss_uma_db(99.0, 100.0, 2.0, 25.0, 1.5, true) ==
        Catch::Approx(78.0206).margin(1e-3));
  // doubling distance pre-breakpoint adds 22*log10(2)
  const double a = pathloss_uma_db(100.0, 100.0, 2.0, 25.0, 1.5, true);
  const double b = pathloss_uma_db(200.0, 200.0, 2.0, 25.0, 1.5, true);
  CHECK(b - a == Catch::Approx(22.0 * std::log10(2.0)).epsilon(1e-12));

  // NLOS >= LOS at equal geometry; monotone in distance
  double prev_los = 0.0, prev_nlos = 0.0;
  for (double d = 15.0; d < 2000.0; d *= 1.3) {
    const double d3 = std::hypot(d, 23.5);
    const double pl_los = pathloss_uma_db(d, d3, 2.0, 25.0, 1.5, true);
    const double pl_nlos = pathloss_uma_db(d, d3, 2.0, 25.0, 1.5, false);
    CHECK(pl_nlos >= pl_los);
    CHECK(pl_los >= prev_los);
    CHECK(pl_nlos >= prev_nlos);
    prev_los = pl_los;
    prev_nlos = pl_nlos;
  }

  // distances below the model floor clamp to 10 m and are counted
  reset_pathloss_clamp_count();
  const double clamped = pathloss_uma_db(5.0, 6.0, 2.0, 25.0, 1.5, true);
  CHECK(clamped == Catch::Approx(pathloss_uma_db(10.0, 10.0, 2.0, 25.0, 1.5, true)));
  CHECK(pathloss_clamp_count() == 1);
  reset_pathloss_clamp_count();

  CHECK_THROWS_AS(pathloss_uma_db(100.0, 100.0, 0.0, 25.0, 1.5, true),
                  std::invalid_argument);
}

TEST_CASE("draw_large_scale determinism and statistics") {
  EnvProfile env;
  const LinkGeometry geom{Vec3(0, 0, 25), Vec3(100, 0, 1.5)};

  RngStream s1(7);
  RngStream s2(7);
  const LargeScale a = draw_large_scale(geom, env, LosMode::Auto, s1);
  const LargeScale b = draw_large_scale(geom, env, LosMode::Auto, s2);
  CHECK(a.pathloss_db == b.pathloss_db);
  CHECK(a.shadow_db == b.shadow_db);
  CHECK(a.is_los == b.is_los);

  EnvProfile no_shadow = env;
  no_shadow.shadow_sigma_los_db = 0.0;
  no_shadow.shadow_sigma_nlos_db = 0.0;
  RngStream s3(9);
  CHECK(draw_large_scale(geom, no_shadow, LosMode::Auto, s3).shadow_db == 0.0);

  // LOS fraction over 1e5 draws matches los_probability(100) within 0.01
  RngStream s4(11);
  int los_count = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    if (draw_large_scale(geom, env, LosMode::Auto, s4).is_los) ++los_count;
  }
  CHECK(static_cast<double>(los_count) / trials == Catch::Approx(0.3477).margin(0.01));

  RngStream s5(13);
  CHECK(draw_large_scale(geom, env, LosMode::ForcedLos, s5).is_los);
  RngStream s6(13);
  CHECK_FALSE(draw_large_scale(geom, env, LosMode::ForcedNlos, s6).is_los);
}

TEST_CASE("synth_clusters structure") {
  EnvProfile env;
  RngStream s1(17);
  const ClusterSet nlos = synth_clusters(env, false, s1);
  CHECK(nlos.clusters.size() == 12);
  CHECK(nlos.total_power() == Catch::Approx(1.0).epsilon(1e-12));
  for (const auto& c : nlos.clusters) CHECK(c.rays.size() == 20);

  RngStream s2(17);
  const ClusterSet los = synth_clusters(env, true, s2);
  CHECK(los.clusters.size() == 9);  // specular + 8 scattered
  CHECK(los.clusters.front().specular);
  CHECK(los.clusters.front().rays.size() == 1);
  CHECK(los.total_power() == Catch::Approx(1.0).epsilon(1e-12));
  // K factor 9 dB: specular carries K/(K+1) of the power
  const double k = db_to_pow(9.0);
  CHECK(los.clusters.front().power == Catch::Approx(k / (k + 1.0)).epsilon(1e-12));

  // determinism
  RngStream s3(21), s4(21);
  const ClusterSet c1 = synth_clusters(env, false, s3);
  const ClusterSet c2 = synth_clusters(env, false, s4);
  REQUIRE(c1.clusters.size() == c2.clusters.size());
  for (std::size_t i = 0; i < c1.clusters.size(); ++i) {
    CHECK(c1.clusters[i].power == c2.clusters[i].power);
    for (std::size_t r = 0; r < c1.clusters[i].rays.size(); ++r) {
      CHECK(c1.clusters[i].rays[r].phase == c2.clusters[i].rays[r].phase);
      CHECK(c1.clusters[i].rays[r].aoa_az_off == c2.clusters[i].rays[r].aoa_az_off);
    }
  }

  // single deterministic ray with zero spreads
  RngStream s5(23);
  const ClusterSet single = synth_clusters(single_ray_env(), false, s5);
  REQUIRE(single.clusters.size() == 1);
  REQUIRE(single.clusters[0].rays.size() == 1);
  CHECK(single.clusters[0].rays[0].aod_az_off == 0.0);
  CHECK(single.clusters[0].rays[0].aoa_zen_off == 0.0);
  CHECK(single.clusters[0].power == 1.0);

  EnvProfile bad;
  bad.clusters_nlos = 0;
  RngStream s6(25);
  CHECK_THROWS_AS(synth_clusters(bad, false, s6), std::invalid_argument);
}

TEST_CASE("synth_link single unit ray") {
  const EnvProfile env = single_ray_env();
  RngStream stream(27);
  const ClusterSet clusters = synth_clusters(env, false, stream);
  const LinkGeometry geom{Vec3(0, 0, 10), Vec3(50, 20, 1.5)};
  const LargeScale unit{0.0, 0.0, false};
  const DopplerSpec still;

  const LinkChannel link = synth_link(omni_panel(1, 1), omni_panel(1, 1), geom,
                                      LinkRole::Direct, clusters, unit, still, env);
  REQUIRE(link.matrix.rows() == 1);
  REQUIRE(link.matrix.cols() == 1);
  CHECK(std::abs(link.matrix(0, 0)) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("synth_link doppler behaviour") {
  const EnvProfile env;
  RngStream stream(29);
  const ClusterSet clusters = synth_clusters(env, false, stream);
  const LinkGeometry geom{Vec3(0, 0, 25), Vec3(120, -40, 1.5)};
  const LargeScale large{90.0, 1.0, false};

  const AntennaPanel tx = omni_panel(4, 2);
  const AntennaPanel rx = omni_panel(1, 1);

  // t = 0 makes the speed irrelevant
  const DopplerSpec still{0.0, 0.0, Vec3(1, 0, 0)};
  const DopplerSpec fast_t0{30.0, 0.0, Vec3(1, 0, 0)};
  const CMatrix m1 = synth_link(tx, rx, geom, LinkRole::Direct, clusters, large, still, env).matrix;
  const CMatrix m2 =
      synth_link(tx, rx, geom, LinkRole::Direct, clusters, large, fast_t0, env).matrix;
  CHECK(m1 == m2);

  // moving receiver at t > 0 changes the direct link
  const DopplerSpec moving{30.0, 0.01, Vec3(1, 0, 0)};
  const CMatrix m3 =
      synth_link(tx, rx, geom, LinkRole::Direct, clusters, large, moving, env).matrix;
  CHECK((m1 - m3).norm() > 0.0);

  // the BS->RIS link never carries Doppler
  AntennaPanel ris;
  ris.n_horizontal = 4;
  ris.n_vertical = 4;
  ris.pattern = ElementPattern::PassiveReflector;
  ris.boresight_azimuth_deg = rad2deg(std::atan2(40.0, -120.0));  // facing the BS
  const CMatrix g1 =
      synth_link(tx, ris, geom, LinkRole::BsToRis, clusters, large, still, env).matrix;
  const CMatrix g2 =
      synth_link(tx, ris, geom, LinkRole::BsToRis, clusters, large, moving, env).matrix;
  CHECK(g1 == g2);
}

TEST_CASE("synth_link pathloss scaling is exact") {
  const EnvProfile env;
  RngStream stream(31);
  const ClusterSet clusters = synth_clusters(env, true, stream);
  const LinkGeometry geom{Vec3(0, 0, 25), Vec3(80, 10, 1.5)};
  const DopplerSpec still;
  const AntennaPanel tx = omni_panel(2, 2);
  const AntennaPanel rx = omni_panel(1, 1);

  const CMatrix base =
      synth_link(tx, rx, geom, LinkRole::Direct, clusters, LargeScale{70.0, 0.0, true}, still, env)
          .matrix;
  const CMatrix down =
      synth_link(tx, rx, geom, LinkRole::Direct, clusters, LargeScale{82.5, 0.0, true}, still, env)
          .matrix;
  const double expect = std::pow(10.0, -12.5 / 20.0);
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    CHECK(std::abs(down(i)) == Catch::Approx(std::abs(base(i)) * expect).epsilon(1e-12));
  }
}

TEST_CASE("synth_link mean Frobenius power matches the link budget") {
  // E ||H||_F^2 = U * M * 10^(-PL/10) with unit gains and no shadowing
  const EnvProfile env;
  const LinkGeometry geom{Vec3(0, 0, 25), Vec3(100, 0, 1.5)};
  const DopplerSpec still;
  const AntennaPanel tx = omni_panel(2, 2);
  const AntennaPanel rx = omni_panel(2, 2);
  const double pl = 60.0;
  const LargeScale large{pl, 0.0, false};

  SeedChain chain(57);
  double sum = 0.0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    RngStream s = chain.child(1, i).stream();
    const ClusterSet clusters = synth_clusters(env, false, s);
    sum += synth_link(tx, rx, geom, LinkRole::Direct, clusters, large, still, env)
               .matrix.squaredNorm();
  }
  CHECK(sum / trials == Catch::Approx(16.0 * std::pow(10.0, -pl / 10.0)).epsilon(0.01));
}

TEST_CASE("synth_link spatial structure matches steering_vector") {
  // single specular ray, BS at origin looking east, user on the boresight ray
  EnvProfile env = single_ray_env();
  env.clusters_los = 0;  // pure specular
  RngStream stream(33);
  const ClusterSet clusters = synth_clusters(env, true, stream);
  REQUIRE(clusters.clusters.size() == 1);

  AntennaPanel tx = omni_panel(4, 3);
  tx.boresight_azimuth_deg = 0.0;
  const LinkGeometry geom{Vec3(0, 0, 20), Vec3(200, 30, 1.5)};
  const LargeScale unit{0.0, 0.0, true};
  const CMatrix h =
      synth_link(tx, omni_panel(1, 1), geom, LinkRole::Direct, clusters, unit, DopplerSpec{}, env)
          .matrix;

  const Vec3 dep = (geom.rx_pos - geom.tx_pos).normalized();
  const DirectionLocal dep_local = to_local_direction(dep, 0.0, 0.0);
  const CVector steer = steering_vector(tx, dep_local);
  // entries differ from the steering vector by one common scalar
  const Complex scale = h(0, 0) / steer(0);
  for (Eigen::Index m = 0; m < steer.size(); ++m) {
    CHECK(std::abs(h(0, m) - scale * steer(m)) < 1e-12);
  }
}

TEST_CASE("ris-side responses of F and G links are conjugate pairs") {
  // same geometry, same specular ray: the RIS-side spatial signature of the
  // departure (F) link is the conjugate of the arrival (G) signature
  EnvProfile env = single_ray_env();
  env.clusters_los = 0;
  RngStream s1(35), s2(35);
  const ClusterSet cl1 = synth_clusters(env, true, s1);
  const ClusterSet cl2 = synth_clusters(env, true, s2);

  AntennaPanel ris;
  ris.n_horizontal = 4;
  ris.n_vertical = 4;
  ris.pattern = ElementPattern::PassiveReflector;
  ris.boresight_azimuth_deg = 180.0;
  const Vec3 ris_pos(0, 0, 10);
  const Vec3 other(-150, 20, 1.5);

  const LargeScale unit{0.0, 0.0, true};
  // G: other -> RIS (RIS receives)
  const CMatrix g = synth_link(omni_panel(1, 1), ris, LinkGeometry{other, ris_pos},
                               LinkRole::BsToRis, cl1, unit, DopplerSpec{}, env)
                        .matrix;
  // F: RIS -> other (RIS transmits)
  const CMatrix f = synth_link(ris, omni_panel(1, 1), LinkGeometry{ris_pos, other},
                               LinkRole::RisToUser, cl2, unit, DopplerSpec{}, env)
                        .matrix;
  REQUIRE(g.rows() == 16);
  REQUIRE(f.cols() == 16);
  const Complex scale = f(0, 0) / std::conj(g(0, 0));
  for (int n = 0; n < 16; ++n) {
    CHECK(std::abs(f(0, n) - scale * std::conj(g(n, 0))) < 1e-12);
  }
}

TEST_CASE("effective_channel composition") {
  PhaseConfig zero;
  zero.phases = RVector::Zero(2);

  CMatrix h(1, 2), f(1, 2), g(2, 2);
  h << Complex(1, 0), Complex(0, 1);
  f << Complex(0, 0), Complex(0, 0);
  g << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
  CHECK(effective_channel(h, f, g, zero) == h);

  // scalar case: H=1, F=1, G=j, theta=-pi/2 -> h_eq = 2
  CMatrix h1(1, 1), f1(1, 1), g1(1, 1);
  h1 << Complex(1, 0);
  f1 << Complex(1, 0);
  g1 << Complex(0, 1);
  PhaseConfig t1;
  t1.phases = RVector::Constant(1, -kPi / 2.0);
  const CMatrix eq = effective_channel(h1, f1, g1, t1);
  CHECK(eq(0, 0).real() == Catch::Approx(2.0));
  CHECK(eq(0, 0).imag() == Catch::Approx(0.0).margin(1e-15));

  CHECK_THROWS_AS(effective_channel(h, f, CMatrix::Zero(3, 2), zero), std::invalid_argument);
  PhaseConfig wrong;
  wrong.phases = RVector::Zero(5);
  CHECK_THROWS_AS(effective_channel(h, f, g, wrong), std::invalid_argument);
}

TEST_CASE("effective_channel against a naive triple loop") {
  RngStream stream(37);
  const int u = 2, m = 3, n = 4;
  CMatrix h(u, m), f(u, n), g(n, m);
  for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = Complex(stream.normal(), stream.normal());
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = Complex(stream.normal(), stream.normal());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = Complex(stream.normal(), stream.normal());
  PhaseConfig theta;
  theta.phases.resize(n);
  for (int i = 0; i < n; ++i) theta.phases(i) = stream.uniform(0, kTwoPi);

  const CMatrix got = effective_channel(h, f, g, theta);
  for (int r = 0; r < u; ++r) {
    for (int c = 0; c < m; ++c) {
      Complex want = h(r, c);
      for (int k = 0; k < n; ++k) {
        want += f(r, k) * std::polar(1.0, theta.phases(k)) * g(k, c);
      }
      CHECK(std::abs(got(r, c) - want) < 1e-12);
    }
  }
}

TEST_CASE("effective_channel linearity and common phase invariance") {
  RngStream stream(39);
  const int n = 6;
  CMatrix h(1, 1), f(1, n), g(n, 1);
  h(0, 0) = Complex(stream.normal(), stream.normal());
  for (int i = 0; i < n; ++i) {
    f(0, i) = Complex(stream.normal(), stream.normal());
    g(i, 0) = Complex(stream.normal(), stream.normal());
  }
  PhaseConfig theta;
  theta.phases.resize(n);
  for (int i = 0; i < n; ++i) theta.phases(i) = stream.uniform(0, kTwoPi);

  // linear in H for fixed (F, G, theta)
  const CMatrix base = effective_channel(h, f, g, theta);
  const CMatrix doubled = effective_channel(2.0 * h, f, g, theta);
  CHECK(std::abs(doubled(0, 0) - (base(0, 0) + h(0, 0))) < 1e-12);

  // |cascade| invariant to a common phase shift of all elements
  const Complex casc0 = base(0, 0) - h(0, 0);
  PhaseConfig shifted = theta;
  for (int i = 0; i < n; ++i) shifted.phases(i) += 1.2345;
  const Complex casc1 = effective_channel(h, f, g, shifted)(0, 0) - h(0, 0);
  CHECK(std::abs(casc0) == Catch::Approx(std::abs(casc1)).epsilon(1e-12));
}
