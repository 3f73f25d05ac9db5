#include "knead/rational.hpp"

namespace knead {

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational");
  if (text.find('.') != std::string::npos)
    throw ParseError("decimal notation rejected, use p/q: '" + text + "'");
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (num.empty() || den.empty())
    throw ParseError("malformed rational '" + text + "'");
  for (const std::string* part : {&num, &den}) {
    for (size_t i = 0; i < part->size(); ++i) {
      char c = (*part)[i];
      if (!(std::isdigit(static_cast<unsigned char>(c)) ||
            (i == 0 && (c == '-' || c == '+'))))
        throw ParseError("malformed rational '" + text + "'");
    }
  }
  Rat r;
  if (r.set_str(num + "/" + den, 10) != 0)
    throw ParseError("malformed rational '" + text + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Int binomial(unsigned long n, unsigned long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Int int_pow(const Int& base, unsigned long exp) {
  Int p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), exp);
  return p;
}

}  // namespace knead
