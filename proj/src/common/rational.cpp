// Copyright 2026 The Interop Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "interop/common/rational.hpp"
#include "interop/common/error.hpp"

#include <cctype>

namespace interop
{
    namespace
    {
        using boost::multiprecision::cpp_int;

        bool all_digits(std::string_view s)
        {
            if (s.empty())
                return false;
            for (char c : s)
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    return false;
            return true;
        }

        cpp_int parse_int(std::string_view s, std::string_view whole)
        {
            if (!all_digits(s))
                fail(Errc::InvalidArgument, "not a rational: '" + std::string(whole) + "'");
            return cpp_int(std::string(s));
        }
    }

    Rational parse_rational(std::string_view text)
    {
        std::string_view body = text;
        bool negative = false;
        if (!body.empty() && (body.front() == '-' || body.front() == '+'))
        {
            negative = body.front() == '-';
            body.remove_prefix(1);
        }

        Rational result;
        if (auto slash = body.find('/'); slash != std::string_view::npos)
        {
            cpp_int num = parse_int(body.substr(0, slash), text);
            cpp_int den = parse_int(body.substr(slash + 1), text);
            if (den == 0)
                fail(Errc::InvalidArgument, "zero denominator: '" + std::string(text) + "'");
            result = Rational(num, den);
        }
        else if (auto dot = body.find('.'); dot != std::string_view::npos)
        {
            std::string_view whole = body.substr(0, dot);
            std::string_view frac = body.substr(dot + 1);
            cpp_int w = whole.empty() ? cpp_int(0) : parse_int(whole, text);
            cpp_int f = parse_int(frac, text);
            cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(frac.size()));
            result = Rational(w * scale + f, scale);
        }
        else
        {
            result = Rational(parse_int(body, text));
        }
        return negative ? Rational(-result) : result;
    }

    std::string to_string(const Rational& value)
    {
        return value.str();
    }

    std::int64_t ceil_mul(const Rational& fraction, std::int64_t count)
    {
        cpp_int num = boost::multiprecision::numerator(fraction) * count;
        cpp_int den = boost::multiprecision::denominator(fraction);
        cpp_int q = num / den;
        if (q * den < num)
            q += 1;
        return q.convert_to<std::int64_t>();
    }
}
