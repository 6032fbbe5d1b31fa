import math

from rest_framework import serializers


def above_two(value):
    if not value > 2:
        raise serializers.ValidationError('must be greater than 2')
    return value


def below_one(value):
    if not value < 1:
        raise serializers.ValidationError('must be less than 1')
    return value


def strictly_positive(value):
    if not (value > 0 and math.isfinite(value)):
        raise serializers.ValidationError('must be a finite number above 0')
    return value


class SystemConfigSerializer(serializers.Serializer):
    """Config-file keys, in the order errors are reported."""

    n_tx = serializers.IntegerField(min_value=1)
    n_rx = serializers.IntegerField(min_value=1)
    n_streams = serializers.IntegerField(min_value=1)
    group_cap = serializers.IntegerField(min_value=1)
    alloc_eps = serializers.FloatField(min_value=0, max_value=1)
    corr_coeff = serializers.FloatField(min_value=0, validators=[below_one])
    snr_db = serializers.FloatField(min_value=-100, max_value=300)
    radius_m = serializers.FloatField(validators=[strictly_positive])
    intensity_per_m2 = serializers.FloatField(validators=[strictly_positive])
    rate_bps_hz = serializers.FloatField(validators=[strictly_positive])
    path_loss_exp = serializers.FloatField(validators=[above_two])
    path_loss_ref = serializers.FloatField(validators=[strictly_positive])
    fading_power = serializers.FloatField(validators=[strictly_positive])
    noise_power = serializers.FloatField(validators=[strictly_positive])

    def validate(self, data):
        limit = min(data['n_tx'], data['n_rx'])
        if data['n_streams'] > limit:
            raise serializers.ValidationError({
                'n_streams': f'must not exceed min(n_tx, n_rx) = {limit}'
            })
        return data


class ResultRowSerializer(serializers.Serializer):
    axis = serializers.CharField()
    axis_value = serializers.FloatField()
    engine = serializers.CharField()
    stream = serializers.IntegerField(allow_null=True)
    user_order = serializers.IntegerField(allow_null=True)
    value = serializers.FloatField(allow_null=True)
    ci_lo = serializers.FloatField(allow_null=True)
    ci_hi = serializers.FloatField(allow_null=True)
    err_est = serializers.FloatField(allow_null=True)
