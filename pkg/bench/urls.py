from django.urls import path

from . import views

urlpatterns = [
    path('defend/', views.defend_view, name='defend'),
    path('attack/', views.attack_view, name='attack'),
    path('evaluate/', views.evaluate_view, name='evaluate'),
]
