#include "epf/seasonal.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "epf/error.hpp"
#include "epf/spline.hpp"

namespace epf {

namespace {

const Date kEpoch = make_date(2000, 1, 1);

double margin_domain_max(const SplineMargin& m) {
  switch (m.covariate) {
    case SeasonalCovariate::HoD: return 24.0;
    case SeasonalCovariate::DoW: return 7.0;
    case SeasonalCovariate::SoY: return kSoYPeriodHours;
  }
  return 0.0;
}

Eigen::MatrixXd margin_basis(const SplineMargin& m, const Eigen::VectorXd& x) {
  double hi = margin_domain_max(m);
  if (m.kind == SplineKind::cp) return periodic_bspline_basis(x, hi, m.knots);
  return bspline_basis(x, 0.0, hi, m.knots);
}

Eigen::MatrixXd margin_penalty(const SplineMargin& m) {
  if (m.kind == SplineKind::cp) return circular_difference_penalty(m.knots);
  return difference_penalty(m.knots);
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd out(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i) {
    for (long j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

Eigen::MatrixXd rowwise_tensor(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd out(A.rows(), A.cols() * B.cols());
  for (long j = 0; j < A.cols(); ++j) {
    for (long l = 0; l < B.cols(); ++l) {
      out.col(j * B.cols() + l) = A.col(j).cwiseProduct(B.col(l));
    }
  }
  return out;
}

}  // namespace

std::vector<SplineTermSpec> default_load_terms() {
  using SC = SeasonalCovariate;
  return {
      {{{SplineKind::ps, SC::HoD, 24}}},
      {{{SplineKind::ps, SC::DoW, 7}}},
      {{{SplineKind::cp, SC::SoY, 12}}},
      {{{SplineKind::ps, SC::HoD, 12}, {SplineKind::cp, SC::SoY, 6}}},
      {{{SplineKind::ps, SC::HoD, 12}, {SplineKind::ps, SC::DoW, 6}}},
  };
}

std::vector<SplineTermSpec> default_res_terms() {
  using SC = SeasonalCovariate;
  return {
      {{{SplineKind::ps, SC::HoD, 24}}},
      {{{SplineKind::cp, SC::SoY, 12}}},
      {{{SplineKind::ps, SC::HoD, 12}, {SplineKind::cp, SC::SoY, 6}}},
  };
}

double hour_index(Date day, int hour) {
  return double((day - kEpoch).count()) * 24.0 + double(hour - 1);
}

double covariate_value(SeasonalCovariate c, Date day, int hour) {
  double hod = double(hour - 1);
  switch (c) {
    case SeasonalCovariate::HoD: return hod;
    case SeasonalCovariate::DoW: return double(weekday_index(day)) + hod / 24.0;
    case SeasonalCovariate::SoY: {
      double v = std::fmod(hour_index(day, hour), kSoYPeriodHours);
      return v < 0 ? v + kSoYPeriodHours : v;
    }
  }
  return 0.0;
}

TermBasis build_basis(const SplineTermSpec& spec, const Eigen::MatrixXd& covariates) {
  if (spec.margins.empty() || spec.margins.size() > 2) {
    throw Error(ErrorCode::InvalidConfig, "term needs 1 or 2 margins");
  }
  if (covariates.cols() != long(spec.margins.size())) {
    throw Error(ErrorCode::Internal, "covariate/margin mismatch");
  }

  TermBasis out;
  std::vector<Eigen::MatrixXd> constrained_bases;
  std::vector<Eigen::MatrixXd> constrained_penalties;
  for (size_t m = 0; m < spec.margins.size(); ++m) {
    const auto& margin = spec.margins[m];
    Eigen::MatrixXd B = margin_basis(margin, covariates.col(long(m)));
    Eigen::VectorXd colsum = B.colwise().sum();
    Eigen::MatrixXd Z = constraint_null_space(colsum);
    out.constraints.push_back(Z);
    constrained_bases.push_back(B * Z);
    constrained_penalties.push_back(Z.transpose() * margin_penalty(margin) * Z);
  }

  if (spec.margins.size() == 1) {
    out.basis = constrained_bases[0];
    out.penalty = constrained_penalties[0];
  } else {
    out.basis = rowwise_tensor(constrained_bases[0], constrained_bases[1]);
    long p1 = constrained_penalties[0].rows(), p2 = constrained_penalties[1].rows();
    out.penalty = kron(constrained_penalties[0], Eigen::MatrixXd::Identity(p2, p2)) +
                  kron(Eigen::MatrixXd::Identity(p1, p1), constrained_penalties[1]);
  }
  return out;
}

namespace {

// Evaluates one term's constrained basis row at (day, hour).
Eigen::RowVectorXd term_row(const FittedTerm& term, Date day, int hour) {
  Eigen::RowVectorXd row;
  for (size_t m = 0; m < term.spec.margins.size(); ++m) {
    const auto& margin = term.spec.margins[m];
    Eigen::VectorXd x(1);
    x(0) = covariate_value(margin.covariate, day, hour);
    Eigen::RowVectorXd b = (margin_basis(margin, x) * term.constraints[m]).row(0);
    if (m == 0) {
      row = b;
    } else {
      Eigen::RowVectorXd t(row.size() * b.size());
      for (long j = 0; j < row.size(); ++j) {
        for (long l = 0; l < b.size(); ++l) t(j * b.size() + l) = row(j) * b(l);
      }
      row = t;
    }
  }
  return row;
}

struct Assembled {
  Eigen::MatrixXd btb;  // p x p cross-products (including intercept + trend)
  Eigen::VectorXd bty;
  double yty = 0.0;
  long n = 0;
  int p = 0;
};

constexpr int kChunk = 4096;

}  // namespace

SeasonalModel fit_seasonal(const Eigen::VectorXd& y, Date start_day,
                           SeasonalTarget target,
                           const std::vector<SplineTermSpec>& specs,
                           const SmoothingGrid& grid) {
  const long n = y.size();
  if (n % 24 != 0) throw Error(ErrorCode::InvalidConfig, "series must be whole days");
  if (n < 3 * 365 * 24) {
    throw Error(ErrorCode::InsufficientHistory, "seasonal fit needs >= 3 years");
  }
  const long days = n / 24;

  SeasonalModel model;
  model.target = target;
  model.train_start = start_day;
  model.train_end = start_day + std::chrono::days{days - 1};

  // Pass 1: column sums per margin for the sum-to-zero constraints, plus the
  // trend mean.
  double tmean = 0.0;
  for (long i = 0; i < n; ++i) {
    tmean += hour_index(start_day + std::chrono::days{i / 24}, int(i % 24) + 1);
  }
  tmean /= double(n);
  model.trend_mean = tmean;

  struct TermWork {
    SplineTermSpec spec;
    std::vector<Eigen::VectorXd> colsums;
    std::vector<Eigen::MatrixXd> constraints;
    int offset = 0, cols = 0;
  };
  std::vector<TermWork> work;
  for (const auto& spec : specs) {
    TermWork w;
    w.spec = spec;
    for (const auto& margin : spec.margins) {
      w.colsums.push_back(Eigen::VectorXd::Zero(margin.knots));
    }
    work.push_back(std::move(w));
  }

  Eigen::VectorXd xbuf(kChunk);
  for (long lo = 0; lo < n; lo += kChunk) {
    long len = std::min(long(kChunk), n - lo);
    for (auto& w : work) {
      for (size_t m = 0; m < w.spec.margins.size(); ++m) {
        for (long i = 0; i < len; ++i) {
          long idx = lo + i;
          xbuf(i) = covariate_value(w.spec.margins[m].covariate,
                                    start_day + std::chrono::days{idx / 24},
                                    int(idx % 24) + 1);
        }
        w.colsums[m] += margin_basis(w.spec.margins[m], xbuf.head(len)).colwise().sum();
      }
    }
  }

  int p = 2;  // intercept + trend
  std::vector<Eigen::MatrixXd> penalties;
  for (auto& w : work) {
    std::vector<Eigen::MatrixXd> cpen;
    int cols = 1;
    for (size_t m = 0; m < w.spec.margins.size(); ++m) {
      Eigen::MatrixXd Z = constraint_null_space(w.colsums[m]);
      w.constraints.push_back(Z);
      cpen.push_back(Z.transpose() * margin_penalty(w.spec.margins[m]) * Z);
      cols *= w.spec.margins[m].knots - 1;
    }
    Eigen::MatrixXd P;
    if (cpen.size() == 1) {
      P = cpen[0];
    } else {
      long p1 = cpen[0].rows(), p2 = cpen[1].rows();
      P = kron(cpen[0], Eigen::MatrixXd::Identity(p2, p2)) +
          kron(Eigen::MatrixXd::Identity(p1, p1), cpen[1]);
    }
    w.offset = p;
    w.cols = cols;
    penalties.push_back(P);
    p += cols;
  }

  // Pass 2: accumulate cross-products chunk-wise.
  Assembled acc;
  acc.btb = Eigen::MatrixXd::Zero(p, p);
  acc.bty = Eigen::VectorXd::Zero(p);
  acc.yty = y.squaredNorm();
  acc.n = n;
  acc.p = p;

  Eigen::MatrixXd chunk(kChunk, p);
  for (long lo = 0; lo < n; lo += kChunk) {
    long len = std::min(long(kChunk), n - lo);
    auto block = chunk.topRows(len);
    for (long i = 0; i < len; ++i) {
      long idx = lo + i;
      block(i, 0) = 1.0;
      block(i, 1) = hour_index(start_day + std::chrono::days{idx / 24},
                               int(idx % 24) + 1) - tmean;
    }
    for (auto& w : work) {
      Eigen::MatrixXd cb;
      for (size_t m = 0; m < w.spec.margins.size(); ++m) {
        for (long i = 0; i < len; ++i) {
          long idx = lo + i;
          xbuf(i) = covariate_value(w.spec.margins[m].covariate,
                                    start_day + std::chrono::days{idx / 24},
                                    int(idx % 24) + 1);
        }
        Eigen::MatrixXd bm =
            margin_basis(w.spec.margins[m], xbuf.head(len)) * w.constraints[m];
        cb = m == 0 ? bm : rowwise_tensor(cb, bm);
      }
      block.middleCols(w.offset, w.cols) = cb;
    }
    acc.btb.noalias() += block.transpose() * block;
    acc.bty.noalias() += block.transpose() * y.segment(lo, len);
  }

  // GCV over per-term lambdas, coordinate-wise on a log grid.
  std::vector<double> lambdas(work.size(), 1.0);
  auto solve_and_gcv = [&](const std::vector<double>& lam, Eigen::VectorXd* theta_out,
                           double* gcv_out) {
    Eigen::MatrixXd A = acc.btb;
    for (size_t t = 0; t < work.size(); ++t) {
      A.block(work[t].offset, work[t].offset, work[t].cols, work[t].cols) +=
          lam[t] * penalties[t];
    }
    A.diagonal().array() += 1e-8;  // guards near-singular systems
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularFit, "penalized normal equations singular");
    }
    Eigen::VectorXd theta = ldlt.solve(acc.bty);
    if (!theta.allFinite()) {
      throw Error(ErrorCode::SingularFit, "penalized solve produced non-finite values");
    }
    double rss = acc.yty - 2.0 * acc.bty.dot(theta) + theta.dot(acc.btb * theta);
    rss = std::max(rss, 0.0);
    double edf = ldlt.solve(acc.btb).trace();
    double denom = double(acc.n) - edf;
    double gcv = denom > 1.0 ? double(acc.n) * rss / (denom * denom)
                             : std::numeric_limits<double>::infinity();
    if (theta_out) *theta_out = theta;
    if (gcv_out) *gcv_out = gcv;
  };

  if (!work.empty()) {
    for (int pass = 0; pass < grid.passes; ++pass) {
      for (size_t t = 0; t < work.size(); ++t) {
        double best_gcv = std::numeric_limits<double>::infinity();
        double best_lam = lambdas[t];
        for (int g = 0; g < grid.points; ++g) {
          double log10 = grid.log10_min + (grid.log10_max - grid.log10_min) *
                                              double(g) / double(grid.points - 1);
          std::vector<double> lam = lambdas;
          lam[t] = std::pow(10.0, log10);
          double gcv;
          solve_and_gcv(lam, nullptr, &gcv);
          if (gcv < best_gcv) {
            best_gcv = gcv;
            best_lam = lam[t];
          }
        }
        lambdas[t] = best_lam;
      }
    }
  }

  Eigen::VectorXd theta;
  double gcv_final;
  solve_and_gcv(lambdas, &theta, &gcv_final);

  model.intercept = theta(0);
  model.trend_slope = theta(1);
  model.theta = theta.tail(p - 2);
  for (size_t t = 0; t < work.size(); ++t) {
    FittedTerm ft;
    ft.spec = work[t].spec;
    ft.constraints = work[t].constraints;
    ft.column_offset = work[t].offset - 2;
    ft.column_count = work[t].cols;
    ft.lambda = lambdas[t];
    model.terms.push_back(std::move(ft));
  }
  return model;
}

double forecast_seasonal(const SeasonalModel& model, Date day, int hour) {
  double v = model.intercept +
             model.trend_slope * (hour_index(day, hour) - model.trend_mean);
  for (const auto& term : model.terms) {
    v += term_row(term, day, hour)
             .dot(model.theta.segment(term.column_offset, term.column_count));
  }
  if (model.target == SeasonalTarget::res) v = std::max(v, 0.0);
  return v;
}

std::vector<RefitEntry> expanding_refit_schedule(Date data_start, Date data_end) {
  int y0 = year_of(data_start);
  int y1 = year_of(data_end);
  int first_served = y0 + 3;
  std::vector<RefitEntry> out;
  // Years inside the data span are served by models trained strictly before
  // them; with fewer than 3 in-span years the single fit serves the year
  // after the data ends.
  if (first_served > y1) {
    if (data_end < make_date(y0 + 2, 12, 31)) {
      throw Error(ErrorCode::InsufficientHistory, "need >= 3 years for the schedule");
    }
    out.push_back({data_end, y1 + 1});
    return out;
  }
  for (int y = first_served; y <= y1; ++y) {
    Date train_end = std::min(make_date(y - 1, 12, 31), data_end);
    out.push_back({train_end, y});
  }
  return out;
}

namespace {

void write_matrix(std::ofstream& out, const Eigen::MatrixXd& m) {
  out << m.rows() << " " << m.cols();
  char buf[32];
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << " " << buf;
    }
  }
  out << "\n";
}

Eigen::MatrixXd read_matrix(std::ifstream& in) {
  long r, c;
  if (!(in >> r >> c)) throw Error(ErrorCode::MalformedRow, "bad model matrix");
  Eigen::MatrixXd m(r, c);
  for (long i = 0; i < r; ++i) {
    for (long j = 0; j < c; ++j) {
      if (!(in >> m(i, j))) throw Error(ErrorCode::MalformedRow, "bad model matrix");
    }
  }
  return m;
}

}  // namespace

void save_seasonal_model(const SeasonalModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Internal, "cannot write " + path);
  out << "epf_seasonal_v1\n";
  out << (model.target == SeasonalTarget::load ? "load" : "res") << "\n";
  out << format_date(model.train_start) << " " << format_date(model.train_end) << "\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", model.intercept);
  out << buf;
  std::snprintf(buf, sizeof(buf), " %.17g", model.trend_slope);
  out << buf;
  std::snprintf(buf, sizeof(buf), " %.17g", model.trend_mean);
  out << buf << "\n";
  out << model.terms.size() << "\n";
  for (const auto& term : model.terms) {
    out << term.spec.margins.size();
    for (const auto& m : term.spec.margins) {
      out << " " << (m.kind == SplineKind::ps ? "ps" : "cp") << " "
          << int(m.covariate) << " " << m.knots;
    }
    std::snprintf(buf, sizeof(buf), " %.17g", term.lambda);
    out << buf << " " << term.column_offset << " " << term.column_count << "\n";
    for (const auto& Z : term.constraints) write_matrix(out, Z);
  }
  write_matrix(out, model.theta);
}

SeasonalModel load_seasonal_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::EmptyInput, "cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "epf_seasonal_v1") {
    throw Error(ErrorCode::MalformedRow, path + ": unknown model format");
  }
  SeasonalModel model;
  std::string target, d0, d1;
  in >> target >> d0 >> d1;
  model.target = target == "load" ? SeasonalTarget::load : SeasonalTarget::res;
  model.train_start = parse_date(d0);
  model.train_end = parse_date(d1);
  in >> model.intercept >> model.trend_slope >> model.trend_mean;
  size_t nterms;
  in >> nterms;
  for (size_t t = 0; t < nterms; ++t) {
    FittedTerm term;
    size_t nmargins;
    in >> nmargins;
    for (size_t m = 0; m < nmargins; ++m) {
      std::string kind;
      int cov, k;
      in >> kind >> cov >> k;
      term.spec.margins.push_back(
          {kind == "ps" ? SplineKind::ps : SplineKind::cp, SeasonalCovariate(cov), k});
    }
    in >> term.lambda >> term.column_offset >> term.column_count;
    for (size_t m = 0; m < nmargins; ++m) term.constraints.push_back(read_matrix(in));
    model.terms.push_back(std::move(term));
  }
  Eigen::MatrixXd theta = read_matrix(in);
  model.theta = theta.col(0);
  return model;
}

}  // namespace epf
