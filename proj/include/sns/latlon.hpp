#ifndef SNS_LATLON_HPP
#define SNS_LATLON_HPP

namespace sns {

struct LatLon {
    double lat = 0;  // degrees, [-90, 90]
    double lon = 0;  // degrees, [-180, 180]
};

}  // namespace sns

#endif
