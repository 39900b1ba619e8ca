#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "washprob/exactnum.hpp"

namespace washprob::ledger {

using exactnum::BigInt;
using exactnum::Rat;

/// Raised for malformed input rows and ledger-integrity violations
/// (overdrawn sales, mismatched adjustment sets).
struct LedgerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Date {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  static Date parse(std::string_view iso);  // strict YYYY-MM-DD, validated
  static bool valid(int year, unsigned month, unsigned day);
  std::int64_t serial() const;  // civil days since 1970-01-01
  std::string str() const;

  friend bool operator==(const Date&, const Date&) = default;
  friend auto operator<=>(const Date&, const Date&) = default;
};

/// |b - a| in calendar days.
std::int64_t days_apart(const Date& a, const Date& b);

enum class Side { buy, sell, short_open, cover };
enum class Origin { market, put_exercise, call_exercise };

std::string_view to_string(Side side);
std::string_view to_string(Origin origin);

struct Trade {
  std::string id;  // assigned by file position: t1, t2, ...
  Date date;
  std::string asset;
  Side side = Side::buy;
  std::int64_t quantity = 0;
  Rat price;  // per share, > 0
  Origin origin = Origin::market;
};

enum class Direction { long_position, short_position };

struct Lot {
  std::string asset;
  Date open_date;
  std::int64_t quantity = 0;
  Rat basis_per_share;  // proceeds per share for short lots
  Direction direction = Direction::long_position;
  Date holding_period_start;
  std::string open_trade_id;
};

struct WashSaleAdjustment {
  std::string loss_trade_id;
  std::string replacement_trade_id;
  Rat disallowed_loss;  // positive total over the matched shares
  std::int64_t matched_quantity = 0;
  Rat new_basis_per_share;  // p3 + (p1 - p2) with the closed lot's prices
  Date holding_period_start;

  friend bool operator==(const WashSaleAdjustment&, const WashSaleAdjustment&) = default;
};

/// One closed-lot realization; preserved so the long/short-term split
/// stays recoverable from the report.
struct Realization {
  std::string asset;
  std::string close_trade_id;
  std::string open_trade_id;
  Date holding_period_start;
  Date close_date;
  std::int64_t quantity = 0;
  Rat amount;      // signed realized gain/loss
  bool long_term = false;  // held more than 365 days from holding start
};

struct AssetReport {
  std::string asset;
  Rat realized;         // gains plus allowed losses (tax view)
  Rat allowed_loss;     // positive total
  Rat disallowed_loss;  // positive total
  BigInt taxable_rounded;
};

struct GainReport {
  std::vector<AssetReport> assets;  // sorted by asset id
  Rat realized_total;
  Rat allowed_loss_total;
  Rat disallowed_loss_total;
  BigInt taxable_rounded_total;
  std::vector<Realization> realizations;
  std::vector<std::string> notes;  // partial resets and other flags
};

/// Parses `date,asset,side,quantity,price[,origin]` CSV. Rows are
/// validated (positive quantity, positive price, known side/origin,
/// valid ISO-8601 date) with errors naming the line, then sorted
/// chronologically with file order breaking date ties.
std::vector<Trade> parse_ledger(std::istream& source);

/// Scans chronologically sorted trades for realized losses with same-asset
/// replacement acquisitions within +-30 calendar days and emits the
/// adjustments, matching shares pro-rata in chronological replacement
/// order; every replacement share absorbs at most one loss share.
std::vector<WashSaleAdjustment> detect_wash_sales(const std::vector<Trade>& trades);

struct ApplyResult {
  std::vector<Lot> lots;  // remaining open lots
  GainReport report;
};

/// Replays the ledger with basis adjustments and holding-period resets
/// applied. `adjustments` must be exactly what detect_wash_sales produces
/// for the same trades; anything else is an integrity error.
ApplyResult apply_adjustments(const std::vector<Trade>& trades,
                              const std::vector<WashSaleAdjustment>& adjustments);

/// Whole-dollar tax rounding: cents at or below 50 drop toward zero, cents
/// above 50 round away; symmetric in sign.
BigInt round_tax_amount(const Rat& amount);

std::string adjustments_to_csv(const std::vector<WashSaleAdjustment>& adjustments);
std::string report_to_json(const GainReport& report);

}  // namespace washprob::ledger
