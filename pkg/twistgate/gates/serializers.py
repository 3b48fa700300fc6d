from rest_framework import serializers


class VectorField(serializers.ListField):
    child = serializers.FloatField()


class TwistDesignSerializer(serializers.Serializer):
    """Сериализатор проекта волновода."""
    theta = serializers.FloatField()
    length = serializers.FloatField()
    twist_rate = serializers.FloatField(allow_null=True)
    pitch = serializers.FloatField(allow_null=True)


class RotationSpecSerializer(serializers.Serializer):
    """Сериализатор вращения в форме ось-угол."""
    axis = VectorField()
    angle = serializers.FloatField()


class DesignConstraintsSerializer(serializers.Serializer):
    theta_max = serializers.FloatField()
    length_max = serializers.FloatField()


class FitOptionsSerializer(serializers.Serializer):
    """Параметры оптимизатора, попадающие в отчёт."""
    population = serializers.IntegerField()
    mutation = VectorField()
    recombination = serializers.FloatField()
    max_generations = serializers.IntegerField()
    target_loss = serializers.FloatField()
    polish = serializers.BooleanField()
    polish_xatol = serializers.FloatField()
    polish_fatol = serializers.FloatField()
    polish_max_iterations = serializers.IntegerField()
    polish_starts = serializers.IntegerField()
    lattice_theta_step = serializers.FloatField()
    lattice_length_step = serializers.FloatField()
    lattice_candidates = serializers.IntegerField()
    refine_iterations = serializers.IntegerField()


class FitResultSerializer(serializers.Serializer):
    """Сериализатор результата подбора."""
    target = RotationSpecSerializer()
    design = TwistDesignSerializer()
    fidelity = serializers.FloatField()
    evaluations = serializers.IntegerField()
    seed = serializers.IntegerField()


class SweepGridSerializer(serializers.Serializer):
    n_polar = serializers.IntegerField()
    n_azimuth = serializers.IntegerField()
    n_angle = serializers.IntegerField()
    size = serializers.IntegerField()


class TargetRecordSerializer(serializers.Serializer):
    """Лучшее приближение одной цели сетки."""
    index = serializers.IntegerField()
    polar = serializers.FloatField()
    azimuth = serializers.FloatField()
    chi = serializers.FloatField()
    axis = VectorField()
    fidelity = serializers.FloatField()
    theta_opt = serializers.FloatField(source='design.theta')
    L_opt = serializers.FloatField(source='design.length')
    evaluations = serializers.IntegerField()


class AxisWorstSerializer(serializers.Serializer):
    polar = serializers.FloatField()
    azimuth = serializers.FloatField()
    axis = VectorField()
    worst_fidelity = serializers.FloatField()


class HistogramSerializer(serializers.Serializer):
    edges = VectorField()
    counts = serializers.ListField(child=serializers.IntegerField())
    underflow = serializers.IntegerField()


class SweepSummarySerializer(serializers.Serializer):
    """Сводка перебора: агрегаты и записи по всем целям."""
    grid = SweepGridSerializer()
    constraints = DesignConstraintsSerializer()
    base_seed = serializers.IntegerField()
    f_min = serializers.FloatField()
    near_unity_fraction = serializers.FloatField()
    histogram = HistogramSerializer()
    axis_worst = AxisWorstSerializer(many=True)
    records = TargetRecordSerializer(many=True)


class ScanRowSerializer(serializers.Serializer):
    theta_max = serializers.FloatField()
    length_max = serializers.FloatField()
    f_min = serializers.FloatField()
    near_unity_fraction = serializers.FloatField()
