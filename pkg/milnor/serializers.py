from rest_framework import serializers

from milnor.algebra import Context, Element, Term, degree
from milnor.exceptions import MilnorError


class TermSerializer(serializers.Serializer):
    c = serializers.IntegerField(source='coeff')
    ext = serializers.ListField(child=serializers.IntegerField(min_value=1))
    exp = serializers.ListField(child=serializers.IntegerField(min_value=0), source='exps')


class ElementSerializer(serializers.Serializer):
    """JSON form ``{"p": 3, "n": 2, "terms": [{"c": 1, "ext": [1, 2], "exp": [3, 0]}]}``."""

    p = serializers.IntegerField(source='ctx.p')
    n = serializers.IntegerField(source='ctx.n')
    terms = TermSerializer(many=True)

    def validate(self, attrs):
        try:
            Context(attrs['ctx']['p'], attrs['ctx']['n'])
        except MilnorError as exc:
            raise serializers.ValidationError(exc.message)
        n = attrs['ctx']['n']
        for term in attrs['terms']:
            if len(term['exps']) != n:
                raise serializers.ValidationError(f"every exponent vector needs {n} entries")
            ext = term['ext']
            if any(i > n for i in ext):
                raise serializers.ValidationError(f"exterior indices must lie in 1..{n}")
            if any(a >= b for a, b in zip(ext, ext[1:])):
                raise serializers.ValidationError("exterior indices must be strictly increasing")
        return attrs

    def create(self, validated_data):
        ctx = Context(validated_data['ctx']['p'], validated_data['ctx']['n'])
        terms = [
            Term(t['coeff'], tuple(t['ext']), tuple(t['exps']))
            for t in validated_data['terms']
        ]
        return Element.from_terms(ctx, terms)


class EvaluationSerializer(ElementSerializer):
    degree = serializers.SerializerMethodField()
    term_count = serializers.SerializerMethodField()

    def get_degree(self, obj):
        return degree(obj)

    def get_term_count(self, obj):
        return len(obj)


class IdentityCaseSerializer(serializers.Serializer):
    id = serializers.CharField(source='identity')
    params = serializers.JSONField()
    status = serializers.CharField()
    branch = serializers.CharField(allow_blank=True)
    message = serializers.CharField(allow_blank=True)
    elapsed = serializers.FloatField()
    diff = serializers.SerializerMethodField()

    def get_diff(self, obj):
        return str(obj.diff) if obj.diff is not None else None


class IdentitySummarySerializer(serializers.Serializer):
    id = serializers.CharField(source='identity')
    cases = serializers.IntegerField()
    passed = serializers.IntegerField()
    failed = serializers.IntegerField()
    elapsed = serializers.FloatField()
    branches = serializers.DictField(child=serializers.IntegerField())
    first_failure = IdentityCaseSerializer(allow_null=True)


class SweepReportSerializer(serializers.Serializer):
    profile = serializers.CharField()
    primes = serializers.ListField(child=serializers.IntegerField())
    total = serializers.IntegerField()
    passed = serializers.IntegerField()
    failed = serializers.IntegerField()
    elapsed = serializers.FloatField()
    ok = serializers.BooleanField()
    identities = IdentitySummarySerializer(many=True, source='summaries')


class JDecompositionSerializer(serializers.Serializer):
    a = serializers.IntegerField()
    blocks = serializers.ListField(child=serializers.IntegerField())
    parts = serializers.ListField(child=serializers.IntegerField())
    b = serializers.IntegerField()
    c = serializers.IntegerField()
    ways = serializers.IntegerField(min_value=1)


class IndexSetSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=['I', 'J'])
    p = serializers.IntegerField()
    u = serializers.IntegerField(min_value=0)
    v = serializers.IntegerField(min_value=1)
    members = serializers.ListField(child=serializers.IntegerField())
    decompositions = JDecompositionSerializer(many=True, required=False)
